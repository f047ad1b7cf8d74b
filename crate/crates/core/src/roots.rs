//! Simply laced root systems and the Catalan-type arrangements built from them.
//!
//! Roots are written in simple-root coordinates: a positive root is the
//! nonnegative integer vector of its coefficients over the simple roots, and
//! λ(x) pairs it with x ∈ 𝔥 written in the dual (fundamental coweight)
//! basis. Only the matroid of the vectors (m, λ) matters for the
//! arrangements built here, and any linear realization gives the same one.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use crate::arith::{FieldDescriptor, Scalar};
use crate::arrangement::{Arrangement, RawHyperplane};
use crate::error::{Error, Result};

/// ADE Dynkin type with its rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E(usize),
}

impl DynkinType {
    pub fn new(kind: char, rank: usize) -> Result<Self> {
        let t = match kind.to_ascii_uppercase() {
            'A' if rank >= 1 => DynkinType::A(rank),
            'D' if rank >= 4 => DynkinType::D(rank),
            'E' if (6..=8).contains(&rank) => DynkinType::E(rank),
            _ => return Err(Error::invalid(format!(
                "unsupported root system {kind}{rank}: expected A_l (l>=1), D_l (l>=4) or E6/E7/E8"
            ))),
        };
        Ok(t)
    }

    pub fn rank(&self) -> usize {
        match *self {
            DynkinType::A(l) | DynkinType::D(l) | DynkinType::E(l) => l,
        }
    }

    /// Edges of the Dynkin diagram, Bourbaki labelling, 0-based.
    fn edges(&self) -> Vec<(usize, usize)> {
        match *self {
            DynkinType::A(l) => (1..l).map(|i| (i - 1, i)).collect(),
            DynkinType::D(l) => {
                let mut e: Vec<_> = (1..l - 1).map(|i| (i - 1, i)).collect();
                e.push((l - 3, l - 1));
                e
            }
            DynkinType::E(l) => {
                // 1-3-4-5-6-7-8 chain with 2 attached to 4
                let mut e = vec![(0, 2), (1, 3)];
                e.extend((2..l - 1).map(|i| (i, i + 1)));
                e
            }
        }
    }

    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let l = self.rank();
        let mut c = vec![vec![0i64; l]; l];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (a, b) in self.edges() {
            c[a][b] = -1;
            c[b][a] = -1;
        }
        c
    }

    pub fn exponents(&self) -> Vec<u64> {
        let mut e: Vec<u64> = match *self {
            DynkinType::A(l) => (1..=l as u64).collect(),
            DynkinType::D(l) => {
                let mut v: Vec<u64> = (0..l as u64 - 1).map(|i| 2 * i + 1).collect();
                v.push(l as u64 - 1);
                v
            }
            DynkinType::E(6) => vec![1, 4, 5, 7, 8, 11],
            DynkinType::E(7) => vec![1, 5, 7, 9, 11, 13, 17],
            DynkinType::E(8) => vec![1, 7, 11, 13, 17, 19, 23, 29],
            DynkinType::E(_) => unreachable!("validated in DynkinType::new"),
        };
        e.sort_unstable();
        e
    }

    pub fn coxeter_number(&self) -> u64 {
        match *self {
            DynkinType::A(l) => l as u64 + 1,
            DynkinType::D(l) => 2 * l as u64 - 2,
            DynkinType::E(6) => 12,
            DynkinType::E(7) => 18,
            DynkinType::E(8) => 30,
            DynkinType::E(_) => unreachable!("validated in DynkinType::new"),
        }
    }

    /// ∏(e_i + 1)
    pub fn weyl_order(&self) -> BigInt {
        self.exponents()
            .iter()
            .map(|&e| BigInt::from(e + 1))
            .product()
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            DynkinType::A(l) => write!(f, "A{l}"),
            DynkinType::D(l) => write!(f, "D{l}"),
            DynkinType::E(l) => write!(f, "E{l}"),
        }
    }
}

impl FromStr for DynkinType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let kind = chars
            .next()
            .ok_or_else(|| Error::invalid("empty root system label"))?;
        let rest = chars.as_str().trim_start_matches('_');
        let rank: usize = rest
            .parse()
            .map_err(|_| Error::invalid(format!("bad root system label `{s}`")))?;
        DynkinType::new(kind, rank)
    }
}

impl Serialize for DynkinType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Classical invariants of a simply laced Weyl group, checked at construction.
#[derive(Clone, Debug)]
pub struct WeylTypeData {
    pub label: DynkinType,
    pub rank: usize,
    pub exponents: Vec<u64>,
    pub coxeter_number: u64,
    /// Positive roots in simple-root coordinates, ordered by height.
    pub positive_roots: Vec<Vec<i64>>,
    pub weyl_order: BigInt,
}

impl WeylTypeData {
    pub const REALIZATION: &'static str = "simple-root coordinates";

    pub fn new(label: DynkinType) -> Result<Self> {
        let rank = label.rank();
        let exponents = label.exponents();
        let coxeter_number = label.coxeter_number();
        let positive_roots = positive_roots(&label.cartan_matrix());
        let weyl_order = label.weyl_order();
        let data = WeylTypeData {
            label,
            rank,
            exponents,
            coxeter_number,
            positive_roots,
            weyl_order,
        };
        data.check()?;
        Ok(data)
    }

    pub fn parse(label: &str) -> Result<Self> {
        Self::new(label.parse()?)
    }

    fn check(&self) -> Result<()> {
        let l = self.rank;
        let h = self.coxeter_number;
        let fail = |what: &str| {
            Err(Error::Inconsistency(format!(
                "{} table: {what}",
                self.label
            )))
        };
        if self.exponents.len() != l {
            return fail("wrong number of exponents");
        }
        if self.exponents.last().map(|e| e + 1) != Some(h) {
            return fail("h != largest exponent + 1");
        }
        if self.positive_roots.len() as u64 * 2 != l as u64 * h {
            return fail("|R+| != l*h/2");
        }
        for i in 0..l {
            if self.exponents[i] + self.exponents[l - 1 - i] != h {
                return fail("exponents not symmetric");
            }
        }
        let prod: BigInt = self
            .exponents
            .iter()
            .map(|&e| BigInt::from(e + 1))
            .product();
        if prod != self.weyl_order {
            return fail("weyl order != prod(e_i + 1)");
        }
        Ok(())
    }
}

/// Positive roots generated from the simple roots: for a simply laced
/// system, β + α_i is a root iff (β, α_i) = −1.
fn positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let l = cartan.len();
    let pair = |b: &[i64], i: usize| -> i64 { (0..l).map(|j| b[j] * cartan[j][i]).sum() };
    let mut roots: Vec<Vec<i64>> = (0..l)
        .map(|i| {
            let mut v = vec![0; l];
            v[i] = 1;
            v
        })
        .collect();
    let mut seen: HashSet<Vec<i64>> = roots.iter().cloned().collect();
    let mut layer = roots.clone();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for b in &layer {
            for i in 0..l {
                if pair(b, i) == -1 {
                    let mut c = b.clone();
                    c[i] += 1;
                    if seen.insert(c.clone()) {
                        next.push(c);
                    }
                }
            }
        }
        next.sort();
        roots.extend(next.iter().cloned());
        layer = next;
    }
    roots
}

/// Parameters of the wreath family S_n ≀ G: the Dynkin type of G and n ≥ 1.
#[derive(Clone, Debug)]
pub struct CatalanSpec {
    pub ty: WeylTypeData,
    pub n: u64,
}

impl CatalanSpec {
    pub fn new(label: DynkinType, n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("wreath parameter n must be at least 1"));
        }
        Ok(CatalanSpec {
            ty: WeylTypeData::new(label)?,
            n,
        })
    }

    /// 0, 1, −1, 2, −2, …, n−1, −(n−1)
    fn offsets(&self) -> Vec<i64> {
        let mut m = vec![0i64];
        for k in 1..self.n as i64 {
            m.push(k);
            m.push(-k);
        }
        m
    }
}

/// Central arrangement in coordinates (α, x₁, …, x_ℓ): α = 0 followed by
/// λ(x) + mα = 0 for every positive root λ and 1−n ≤ m ≤ n−1.
pub fn catalan_arrangement(spec: &CatalanSpec) -> Arrangement {
    let f = FieldDescriptor::RATIONAL;
    let l = spec.ty.rank;
    let int = |v: i64| Scalar::from_int(f, v);
    let mut raw: Vec<RawHyperplane> = Vec::new();
    let mut alpha = vec![int(0); l + 1];
    alpha[0] = int(1);
    raw.push((alpha, int(0)));
    for root in &spec.ty.positive_roots {
        for m in spec.offsets() {
            let mut n = vec![int(m)];
            n.extend(root.iter().map(|&c| int(c)));
            raw.push((n, int(0)));
        }
    }
    Arrangement::build(f, l + 1, raw).expect("catalan arrangement")
}

/// Affine arrangement {λ(x) + m = 0} in ℓ variables; its cone is
/// [`catalan_arrangement`].
pub fn affine_catalan(spec: &CatalanSpec) -> Arrangement {
    let f = FieldDescriptor::RATIONAL;
    let int = |v: i64| Scalar::from_int(f, v);
    let mut raw: Vec<RawHyperplane> = Vec::new();
    for root in &spec.ty.positive_roots {
        for m in spec.offsets() {
            raw.push((root.iter().map(|&c| int(c)).collect(), int(-m)));
        }
    }
    Arrangement::build(f, spec.ty.rank, raw).expect("affine catalan arrangement")
}

/// Same hyperplanes as [`catalan_arrangement`] but generated from the full
/// root system R = R+ ∪ −R+. Used to check that positive roots suffice.
pub fn catalan_from_all_roots(spec: &CatalanSpec) -> Arrangement {
    let f = FieldDescriptor::RATIONAL;
    let l = spec.ty.rank;
    let int = |v: i64| Scalar::from_int(f, v);
    let mut raw: Vec<RawHyperplane> = Vec::new();
    let mut alpha = vec![int(0); l + 1];
    alpha[0] = int(1);
    raw.push((alpha, int(0)));
    for root in &spec.ty.positive_roots {
        for sign in [1i64, -1] {
            for m in spec.offsets() {
                let mut n = vec![int(m)];
                n.extend(root.iter().map(|&c| int(sign * c)));
                raw.push((n, int(0)));
            }
        }
    }
    Arrangement::build(f, l + 1, raw).expect("catalan arrangement")
}
