//! Resolution counts: dim H*(𝔠 ∖ 𝒟) / |W|, the closed form for wreath
//! products S_n ≀ G, and Namikawa Weyl group orders from parabolic data.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arrangement::{Arrangement, IntersectionLattice, LatticeOptions};
use crate::error::{Error, Result};
use crate::group::ParabolicClass;
use crate::oracle::OracleRecord;
use crate::report::{bigint_as_number, ArrangementReport};
use crate::roots::{catalan_arrangement, CatalanSpec, DynkinType, WeylTypeData};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WeylSource {
    /// Full Weyl group of the label.
    Label,
    /// Tabulated value for a class whose normalizer quotient acts nontrivially.
    Override,
    /// Supplied directly by the caller.
    Given,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeylFactor {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<DynkinType>,
    #[serde(serialize_with = "bigint_as_number")]
    pub order: BigInt,
    pub source: WeylSource,
}

#[derive(Clone, Debug, Serialize)]
pub struct NamikawaWeylData {
    pub factors: Vec<WeylFactor>,
    #[serde(serialize_with = "bigint_as_number")]
    pub total_order: BigInt,
}

impl NamikawaWeylData {
    pub fn from_factors(factors: Vec<WeylFactor>) -> Self {
        let total_order = factors.iter().map(|f| f.order.clone()).product();
        NamikawaWeylData {
            factors,
            total_order,
        }
    }

    pub fn given(order: u64) -> Result<Self> {
        if order == 0 {
            return Err(Error::invalid("Weyl group order must be at least 1"));
        }
        Ok(Self::from_factors(vec![WeylFactor {
            label: None,
            order: BigInt::from(order),
            source: WeylSource::Given,
        }]))
    }

    pub fn labelled(labels: &[DynkinType]) -> Self {
        Self::from_factors(
            labels
                .iter()
                .map(|&l| WeylFactor {
                    label: Some(l),
                    order: l.weyl_order(),
                    source: WeylSource::Label,
                })
                .collect(),
        )
    }
}

/// |W_B| for the parabolic class at `class_index` in the sorted class list.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeylOverride {
    pub class_index: usize,
    pub order: u64,
}

/// |W| = ∏ |W_B|. Classes whose normalizer quotient permutes H-classes
/// trivially contribute the full Weyl group of their label; any class may be
/// overridden, and a nontrivial action without an override is refused.
pub fn namikawa_weyl_from_group(
    parabolics: &[ParabolicClass],
    overrides: &[WeylOverride],
) -> Result<NamikawaWeylData> {
    let mut factors = Vec::with_capacity(parabolics.len());
    let mut full = BigInt::one();
    for (i, p) in parabolics.iter().enumerate() {
        full *= p.label.weyl_order();
        let factor = if let Some(o) = overrides.iter().find(|o| o.class_index == i) {
            WeylFactor {
                label: Some(p.label),
                order: BigInt::from(o.order),
                source: WeylSource::Override,
            }
        } else if p.xi_acts_trivially() {
            WeylFactor {
                label: Some(p.label),
                order: p.label.weyl_order(),
                source: WeylSource::Label,
            }
        } else {
            return Err(Error::UnsupportedFolding(format!(
                "parabolic class {i} ({}) has a normalizer quotient of order {} acting \
                 nontrivially on its conjugacy classes; the Weyl group order for such a \
                 folding is not derived and no override was supplied",
                p.label,
                p.xi_order()
            )));
        };
        factors.push(factor);
    }
    let data = NamikawaWeylData::from_factors(factors);
    if !full.is_multiple_of(&data.total_order) {
        return Err(Error::Inconsistency(format!(
            "|W| = {} does not divide the product of full Weyl group orders {full}",
            data.total_order
        )));
    }
    Ok(data)
}

#[derive(Clone, Debug, Serialize)]
pub struct CountReport {
    pub arrangement: ArrangementReport,
    #[serde(serialize_with = "bigint_as_number")]
    pub os_dimension: BigInt,
    pub weyl: NamikawaWeylData,
    #[serde(serialize_with = "bigint_as_number")]
    pub weyl_order: BigInt,
    #[serde(serialize_with = "bigint_as_number")]
    pub resolution_count: BigInt,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleRecord>,
}

pub fn count_resolutions(
    a: &Arrangement,
    w: &NamikawaWeylData,
    opts: &LatticeOptions,
) -> Result<CountReport> {
    let lattice = IntersectionLattice::build(a, opts)?;
    count_resolutions_with(a, &lattice, w)
}

/// π(𝒜, 1) / |W| with exact division. For real arrangements the region
/// count is also checked against π(𝒜, 1).
pub fn count_resolutions_with(
    a: &Arrangement,
    lattice: &IntersectionLattice,
    w: &NamikawaWeylData,
) -> Result<CountReport> {
    if !a.is_central() {
        return Err(Error::invalid(
            "resolution counting needs a central arrangement (cone an affine one first)",
        ));
    }
    if w.total_order <= BigInt::zero() {
        return Err(Error::invalid("Weyl group order must be at least 1"));
    }
    let report = ArrangementReport::new(a, lattice);
    let os = report.os_dimension.clone();
    let (count, rem) = os.div_rem(&w.total_order);
    if !rem.is_zero() {
        return Err(Error::Inconsistency(format!(
            "OS dimension {os} is not divisible by |W| = {}",
            w.total_order
        )));
    }
    if let Some(r) = &report.regions {
        if r.regions != os {
            return Err(Error::Inconsistency(format!(
                "{} regions but pi(1) = {os}",
                r.regions
            )));
        }
    }
    Ok(CountReport {
        arrangement: report,
        os_dimension: os,
        weyl: w.clone(),
        weyl_order: w.total_order.clone(),
        resolution_count: count,
        oracle: None,
    })
}

/// ∏ ((n−1)h + e_i + 1) / (e_i + 1), asserted integral. Equals 1 for n = 1.
pub fn wreath_count_closed_form(ty: &WeylTypeData, n: u64) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::invalid("wreath parameter n must be at least 1"));
    }
    let h = BigInt::from(ty.coxeter_number);
    let shift = BigInt::from(n - 1) * h;
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for &e in &ty.exponents {
        num *= &shift + BigInt::from(e + 1);
        den *= BigInt::from(e + 1);
    }
    let (q, r) = num.div_rem(&den);
    if !r.is_zero() {
        return Err(Error::Inconsistency(format!(
            "closed form for {} n={n} is not an integer: {num}/{den}",
            ty.label
        )));
    }
    Ok(q)
}

/// W = Z/2 × W_G for n ≥ 2 and W_G for n = 1.
pub fn wreath_weyl_data(ty: &WeylTypeData, n: u64) -> NamikawaWeylData {
    let mut factors = Vec::new();
    if n >= 2 {
        factors.push(WeylFactor {
            label: Some(DynkinType::A(1)),
            order: BigInt::from(2),
            source: WeylSource::Label,
        });
    }
    factors.push(WeylFactor {
        label: Some(ty.label),
        order: ty.weyl_order.clone(),
        source: WeylSource::Label,
    });
    NamikawaWeylData::from_factors(factors)
}

/// The arrangement route: count on the coned Catalan arrangement.
pub fn wreath_count_direct(spec: &CatalanSpec, opts: &LatticeOptions) -> Result<CountReport> {
    let a = catalan_arrangement(spec);
    count_resolutions(&a, &wreath_weyl_data(&spec.ty, spec.n), opts)
}
