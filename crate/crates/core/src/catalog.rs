//! Built-in worked examples with their published or closed-form values.

use num_bigint::BigInt;

use crate::arrangement::format::parse_arrangement;
use crate::arrangement::{Arrangement, IntegerPolynomial};
use crate::counting::{
    wreath_count_closed_form, wreath_weyl_data, NamikawaWeylData, WeylFactor, WeylOverride,
    WeylSource,
};
use crate::error::{Error, Result};
use crate::group::{parse_group, MatrixGroup};
use crate::roots::{catalan_arrangement, CatalanSpec, DynkinType};

pub const Q8D8_ARRANGEMENT: &str = include_str!("../data/q8d8.arr");
pub const G4_ARRANGEMENT: &str = include_str!("../data/g4.arr");
pub const Q8D8_GROUP: &str = include_str!("../data/q8d8.grp");
pub const G4_GROUP: &str = include_str!("../data/g4.grp");

/// Names exercised by the self-test, in order.
pub const SELFTEST_ENTRIES: &[&str] = &[
    "q8d8",
    "g4",
    "wreath:A1:2",
    "wreath:A1:3",
    "wreath:A2:2",
    "wreath:A3:2",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpectedGroup {
    pub order: usize,
    pub reflection_classes: usize,
    pub parabolic_labels: Vec<DynkinType>,
    /// Whether every normalizer quotient is expected to act trivially.
    pub xi_trivial: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct Expected {
    pub poincare: Option<IntegerPolynomial>,
    pub os_dimension: BigInt,
    pub count: BigInt,
    pub group: Option<ExpectedGroup>,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub arrangement: Arrangement,
    pub weyl: NamikawaWeylData,
    /// Group file text, where the generators are stored.
    pub group_text: Option<&'static str>,
    /// Per-parabolic-class |W_B| for classes that are not read off the label.
    pub weyl_overrides: Vec<WeylOverride>,
    pub wreath: Option<CatalanSpec>,
    pub expected: Expected,
}

impl CatalogEntry {
    pub fn group(&self) -> Option<Result<MatrixGroup>> {
        self.group_text.map(parse_group)
    }
}

pub fn catalog(name: &str) -> Result<CatalogEntry> {
    match name {
        "q8d8" => Ok(q8d8()),
        "g4" => Ok(g4()),
        _ => match name.strip_prefix("wreath:") {
            Some(rest) => wreath(name, rest),
            None => Err(Error::invalid(format!(
                "unknown catalog entry `{name}` (expected q8d8, g4 or wreath:TYPE:N)"
            ))),
        },
    }
}

fn q8d8() -> CatalogEntry {
    CatalogEntry {
        name: "q8d8".into(),
        arrangement: parse_arrangement(Q8D8_ARRANGEMENT).expect("shipped q8d8 arrangement"),
        weyl: NamikawaWeylData::labelled(&[DynkinType::A(1); 5]),
        group_text: Some(Q8D8_GROUP),
        weyl_overrides: Vec::new(),
        wreath: None,
        expected: Expected {
            poincare: Some(IntegerPolynomial::from_i64s(&[1, 21, 170, 650, 1125, 625])),
            os_dimension: BigInt::from(2592),
            count: BigInt::from(81),
            group: Some(ExpectedGroup {
                order: 32,
                reflection_classes: 5,
                parabolic_labels: vec![DynkinType::A(1); 5],
                xi_trivial: Some(true),
            }),
        },
    }
}

fn g4() -> CatalogEntry {
    CatalogEntry {
        name: "g4".into(),
        arrangement: parse_arrangement(G4_ARRANGEMENT).expect("shipped g4 arrangement"),
        weyl: NamikawaWeylData::from_factors(vec![WeylFactor {
            label: Some(DynkinType::A(2)),
            order: BigInt::from(3),
            source: WeylSource::Override,
        }]),
        group_text: Some(G4_GROUP),
        weyl_overrides: vec![WeylOverride {
            class_index: 0,
            order: 3,
        }],
        wreath: None,
        expected: Expected {
            poincare: Some(IntegerPolynomial::from_i64s(&[1, 3, 2])),
            os_dimension: BigInt::from(6),
            count: BigInt::from(2),
            group: Some(ExpectedGroup {
                order: 24,
                reflection_classes: 2,
                parabolic_labels: vec![DynkinType::A(2)],
                xi_trivial: None,
            }),
        },
    }
}

fn wreath(name: &str, rest: &str) -> Result<CatalogEntry> {
    let (ty, n) = rest
        .split_once(':')
        .ok_or_else(|| Error::invalid(format!("expected wreath:TYPE:N, got `{name}`")))?;
    let label: DynkinType = ty.parse()?;
    let n: u64 = n
        .parse()
        .map_err(|_| Error::invalid(format!("bad wreath parameter `{n}`")))?;
    let spec = CatalanSpec::new(label, n)?;
    let weyl = wreath_weyl_data(&spec.ty, n);
    let count = wreath_count_closed_form(&spec.ty, n)?;
    let os_dimension = &count * &weyl.total_order;
    Ok(CatalogEntry {
        name: format!("wreath:{label}:{n}"),
        arrangement: catalan_arrangement(&spec),
        weyl,
        group_text: None,
        weyl_overrides: Vec::new(),
        wreath: Some(spec),
        expected: Expected {
            poincare: None,
            os_dimension,
            count,
            group: None,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_files_parse() {
        let q = catalog("q8d8").unwrap();
        assert_eq!(q.arrangement.len(), 21);
        assert_eq!(q.arrangement.ambient_dim(), 5);
        assert!(q.arrangement.field().is_rational());
        assert_eq!(q.weyl.total_order, BigInt::from(32));
        let g = catalog("g4").unwrap();
        assert_eq!(g.arrangement.len(), 3);
        assert_eq!(g.arrangement.field().conductor(), 3);
        assert_eq!(g.weyl.total_order, BigInt::from(3));
        assert!(q.group().unwrap().is_ok());
        assert!(g.group().unwrap().is_ok());
    }

    #[test]
    fn wreath_entries() {
        let w = catalog("wreath:A1:2").unwrap();
        assert_eq!(w.expected.count, BigInt::from(2));
        assert_eq!(w.expected.os_dimension, BigInt::from(8));
        assert_eq!(w.arrangement.len(), 4);
        assert_eq!(catalog("wreath:A_2:2").unwrap().name, "wreath:A2:2");
        for bad in [
            "wreath:A1",
            "wreath:B2:2",
            "wreath:A1:0",
            "wreath:A1:x",
            "e8",
        ] {
            assert!(catalog(bad).is_err(), "{bad}");
        }
    }
}
