//! Serializable summaries. JSON key order follows struct field order.

use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use crate::arith::FieldDescriptor;
use crate::arrangement::{Arrangement, IntegerPolynomial, IntersectionLattice, RegionCount};

/// Integers that fit in 64 bits become JSON numbers, larger ones strings.
pub fn bigint_as_number<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    if let Some(v) = n.to_i64() {
        s.serialize_i64(v)
    } else if let Some(v) = n.to_u64() {
        s.serialize_u64(v)
    } else {
        s.collect_str(n)
    }
}

pub fn field_name(f: FieldDescriptor) -> String {
    if f.is_rational() {
        "rational".into()
    } else {
        format!("cyclotomic {}", f.conductor())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ArrangementReport {
    pub field: String,
    pub ambient_dim: usize,
    pub num_hyperplanes: usize,
    pub rank: usize,
    pub char_poly: IntegerPolynomial,
    pub poincare_poly: IntegerPolynomial,
    #[serde(serialize_with = "bigint_as_number")]
    pub os_dimension: BigInt,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regions: Option<RegionCount>,
    pub flats_per_level: Vec<usize>,
    pub moebius_checksum: i128,
}

impl ArrangementReport {
    /// Region counts are filled in only for arrangements defined over ℝ.
    pub fn new(a: &Arrangement, lattice: &IntersectionLattice) -> Self {
        let regions = if a.first_non_real().is_none() {
            a.region_count_with(lattice).ok()
        } else {
            None
        };
        ArrangementReport {
            field: field_name(a.field()),
            ambient_dim: a.ambient_dim(),
            num_hyperplanes: a.len(),
            rank: lattice.rank(),
            char_poly: lattice.characteristic_polynomial(),
            poincare_poly: lattice.poincare_polynomial(),
            os_dimension: lattice.os_dimension(),
            regions,
            flats_per_level: lattice.flats_per_level(),
            moebius_checksum: lattice.moebius_checksum(),
        }
    }
}

impl fmt::Display for ArrangementReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        writeln!(s, "field            {}", self.field)?;
        writeln!(s, "ambient dim      {}", self.ambient_dim)?;
        writeln!(s, "hyperplanes      {}", self.num_hyperplanes)?;
        writeln!(s, "rank             {}", self.rank)?;
        writeln!(s, "chi(t)           {}", self.char_poly)?;
        writeln!(s, "pi(t)            {}", self.poincare_poly)?;
        writeln!(s, "OS dimension     {}", self.os_dimension)?;
        if let Some(r) = &self.regions {
            writeln!(s, "regions          {} ({} bounded)", r.regions, r.bounded)?;
        }
        writeln!(s, "flats per level  {:?}", self.flats_per_level)?;
        write!(s, "mobius checksum  {}", self.moebius_checksum)?;
        f.write_str(&s)
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialization");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_values_become_strings() {
        #[derive(Serialize)]
        struct W {
            #[serde(serialize_with = "bigint_as_number")]
            n: BigInt,
        }
        let small = serde_json::to_string(&W {
            n: BigInt::from(-5),
        })
        .unwrap();
        assert_eq!(small, r#"{"n":-5}"#);
        let big: BigInt = BigInt::from(u64::MAX) * 10;
        let s = serde_json::to_string(&W { n: big }).unwrap();
        assert_eq!(s, r#"{"n":"184467440737095516150"}"#);
    }

    #[test]
    fn key_order_is_stable() {
        let a = Arrangement::rational_central(2, &[vec![1, 0], vec![0, 1]]).unwrap();
        let l = a.intersection_lattice().unwrap();
        let json = to_json(&ArrangementReport::new(&a, &l));
        let keys = [
            "field",
            "ambient_dim",
            "num_hyperplanes",
            "rank",
            "char_poly",
            "poincare_poly",
            "os_dimension",
            "regions",
            "flats_per_level",
            "moebius_checksum",
        ];
        let pos: Vec<usize> = keys
            .iter()
            .map(|k| json.find(&format!("\"{k}\"")).unwrap())
            .collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]), "{json}");
        assert_eq!(json, to_json(&ArrangementReport::new(&a, &l)));
    }
}
