use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Coefficient field: ℚ (conductor 1) or the cyclotomic field ℚ(ζ_N).
///
/// Elements are stored in the power basis 1, ζ, …, ζ^{φ(N)−1}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldDescriptor {
    conductor: u32,
}

impl FieldDescriptor {
    pub const RATIONAL: FieldDescriptor = FieldDescriptor { conductor: 1 };

    /// Largest conductor accepted; keeps Φ_N computations desk-sized.
    pub const MAX_CONDUCTOR: u32 = 10_000;

    pub fn cyclotomic(conductor: u32) -> Result<Self> {
        if conductor == 0 || conductor > Self::MAX_CONDUCTOR {
            return Err(Error::invalid(format!(
                "cyclotomic conductor must be in 1..={}, got {conductor}",
                Self::MAX_CONDUCTOR
            )));
        }
        Ok(FieldDescriptor { conductor })
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    /// φ(N); 1 for ℚ.
    pub fn degree(&self) -> usize {
        euler_totient(self.conductor) as usize
    }

    /// Integer coefficients of Φ_N, lowest degree first (monic).
    pub fn modulus(&self) -> Arc<Vec<BigInt>> {
        cyclotomic_polynomial(self.conductor)
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "rational")
        } else {
            write!(f, "cyclotomic {}", self.conductor)
        }
    }
}

pub fn euler_totient(n: u32) -> u32 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

fn cache() -> &'static Mutex<HashMap<u32, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Φ_N via x^N − 1 = ∏_{d | N} Φ_d, memoized per conductor.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<BigInt>> {
    if let Some(p) = cache().lock().unwrap().get(&n) {
        return Arc::clone(p);
    }
    // x^n - 1
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let phi_d = cyclotomic_polynomial(d);
            num = exact_monic_div(&num, &phi_d);
        }
    }
    let out = Arc::new(num);
    cache().lock().unwrap().insert(n, Arc::clone(&out));
    out
}

fn exact_monic_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: u64) -> u64 {
    let mut c = n + 1;
    loop {
        if is_prime(c) {
            return c;
        }
        c += 1;
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs(n: u32) -> Vec<i64> {
        cyclotomic_polynomial(n)
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(coeffs(1), vec![-1, 1]);
        assert_eq!(coeffs(2), vec![1, 1]);
        assert_eq!(coeffs(3), vec![1, 1, 1]);
        assert_eq!(coeffs(4), vec![1, 0, 1]);
        assert_eq!(coeffs(6), vec![1, -1, 1]);
        assert_eq!(coeffs(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(coeffs(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn phi_105_has_a_coefficient_minus_two() {
        assert!(coeffs(105).contains(&-2));
        assert_eq!(coeffs(105).len() as u32 - 1, euler_totient(105));
    }

    #[test]
    fn degree_is_totient() {
        for n in 1..60 {
            let f = FieldDescriptor::cyclotomic(n).unwrap();
            assert_eq!(f.degree(), f.modulus().len() - 1);
        }
        assert_eq!(FieldDescriptor::RATIONAL.degree(), 1);
        assert!(FieldDescriptor::cyclotomic(0).is_err());
    }

    #[test]
    fn primes() {
        assert_eq!(next_prime(7), 11);
        assert_eq!(next_prime(1), 2);
        assert!(!is_prime(91));
    }
}
