//! Cross-checks of lattice results against the matroid-side computations.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;

use crate::arrangement::{Arrangement, IntersectionLattice};
use crate::error::{Error, Result};
use crate::matroid::{finite_field_count, good_primes, nbc_betti, MatroidOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleKind {
    Nbc,
    Ff,
    None,
}

impl FromStr for OracleKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nbc" => Ok(OracleKind::Nbc),
            "ff" => Ok(OracleKind::Ff),
            "none" => Ok(OracleKind::None),
            _ => Err(Error::invalid(format!(
                "unknown oracle `{s}` (expected nbc, ff or none)"
            ))),
        }
    }
}

impl fmt::Display for OracleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OracleKind::Nbc => "nbc",
            OracleKind::Ff => "ff",
            OracleKind::None => "none",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FfCheck {
    pub q: u64,
    pub points: u64,
    #[serde(serialize_with = "crate::report::bigint_as_number")]
    pub chi_at_q: BigInt,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleRecord {
    pub oracle: OracleKind,
    pub agrees: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nbc_betti: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub finite_field: Vec<FfCheck>,
}

/// Primes tried by the finite-field oracle start above this value.
pub const FF_FIRST_PRIME_AFTER: u64 = 6;

/// Number of good primes the finite-field oracle checks.
pub const FF_PRIMES: usize = 2;

pub fn run_oracle(
    a: &Arrangement,
    lattice: &IntersectionLattice,
    kind: OracleKind,
    opts: &MatroidOptions,
) -> Result<Option<OracleRecord>> {
    match kind {
        OracleKind::None => Ok(None),
        OracleKind::Nbc => {
            let betti = nbc_betti(a, opts)?;
            let pi = lattice.poincare_polynomial();
            let agrees = pi.coefficients().len() == betti.len()
                && pi
                    .coefficients()
                    .iter()
                    .zip(&betti)
                    .all(|(c, &b)| *c == BigInt::from(b));
            Ok(Some(OracleRecord {
                oracle: kind,
                agrees,
                nbc_betti: Some(betti),
                finite_field: Vec::new(),
            }))
        }
        OracleKind::Ff => {
            let chi = lattice.characteristic_polynomial();
            let mut checks = Vec::new();
            for q in good_primes(a, FF_PRIMES, FF_FIRST_PRIME_AFTER, opts)? {
                checks.push(FfCheck {
                    q,
                    points: finite_field_count(a, q, opts)?,
                    chi_at_q: chi.eval(&BigInt::from(q)),
                });
            }
            let agrees = checks.iter().all(|c| BigInt::from(c.points) == c.chi_at_q);
            Ok(Some(OracleRecord {
                oracle: kind,
                agrees,
                nbc_betti: None,
                finite_field: checks,
            }))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn braid_agrees_both_ways() {
        let a = Arrangement::rational_central(3, &[vec![1, -1, 0], vec![1, 0, -1], vec![0, 1, -1]])
            .unwrap();
        let l = a.intersection_lattice().unwrap();
        let opts = MatroidOptions::default();
        let n = run_oracle(&a, &l, OracleKind::Nbc, &opts).unwrap().unwrap();
        assert!(n.agrees);
        assert_eq!(n.nbc_betti, Some(vec![1, 3, 2]));
        let f = run_oracle(&a, &l, OracleKind::Ff, &opts).unwrap().unwrap();
        assert!(f.agrees);
        assert_eq!(f.finite_field[0].q, 7);
        assert_eq!(f.finite_field[0].points, 210);
        assert_eq!(f.finite_field[1].points, 990);
        assert!(run_oracle(&a, &l, OracleKind::None, &opts)
            .unwrap()
            .is_none());
    }

    #[test]
    fn parse_kind() {
        assert_eq!("ff".parse::<OracleKind>().unwrap(), OracleKind::Ff);
        assert!("x".parse::<OracleKind>().is_err());
    }
}
