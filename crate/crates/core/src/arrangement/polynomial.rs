use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::{Serialize, SerializeSeq, Serializer};

/// Univariate polynomial with arbitrary-precision integer coefficients,
/// indexed by degree. The zero polynomial has no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntegerPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntegerPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntegerPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// t − a
    pub fn linear_root(a: i64) -> Self {
        Self::from_i64s(&[-a, 1])
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coefficient(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    pub fn eval_i64(&self, t: i64) -> BigInt {
        self.eval(&BigInt::from(t))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::default();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n)
                .map(|k| self.coefficient(k) + other.coefficient(k))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n)
                .map(|k| self.coefficient(k) - other.coefficient(k))
                .collect(),
        )
    }

    /// Exact division by (t − a); `None` if a is not a root.
    pub fn div_linear(&self, a: i64) -> Option<Self> {
        if !self.eval_i64(a).is_zero() {
            return None;
        }
        let a = BigInt::from(a);
        let n = self.coeffs.len();
        if n == 0 {
            return Some(Self::default());
        }
        let mut q = vec![BigInt::zero(); n - 1];
        let mut carry = BigInt::zero();
        for k in (1..n).rev() {
            carry = &self.coeffs[k] + carry * &a;
            q[k - 1] = carry.clone();
        }
        Some(Self::new(q))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }
}

impl fmt::Display for IntegerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_mag = k == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}

/// Serialized as the coefficient list, lowest degree first. Coefficients that
/// fit in 64 bits are JSON numbers, larger ones decimal strings.
impl Serialize for IntegerPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            match i64::try_from(c) {
                Ok(v) => seq.serialize_element(&v)?,
                Err(_) => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display() {
        assert_eq!(
            IntegerPolynomial::from_i64s(&[2, -3, 1]).to_string(),
            "2 - 3t + t^2"
        );
        assert_eq!(
            IntegerPolynomial::from_i64s(&[1, 21, 170]).to_string(),
            "1 + 21t + 170t^2"
        );
        assert_eq!(IntegerPolynomial::from_i64s(&[0, -1]).to_string(), "-t");
        assert_eq!(IntegerPolynomial::default().to_string(), "0");
    }

    #[test]
    fn arithmetic() {
        let a = IntegerPolynomial::from_i64s(&[1, 1]);
        let b = IntegerPolynomial::from_i64s(&[1, 3]);
        assert_eq!(a.mul(&b), IntegerPolynomial::from_i64s(&[1, 4, 3]));
        assert_eq!(a.mul(&b).eval_i64(1), BigInt::from(8));
        let chi = IntegerPolynomial::from_i64s(&[2, -3, 1]);
        assert_eq!(
            chi.div_linear(1),
            Some(IntegerPolynomial::from_i64s(&[-2, 1]))
        );
        assert_eq!(chi.div_linear(3), None);
        assert_eq!(a.sub(&a), IntegerPolynomial::default());
        assert_eq!(IntegerPolynomial::from_i64s(&[0, 0, 0]).degree(), None);
    }

    #[test]
    fn json_is_a_coefficient_list() {
        let p = IntegerPolynomial::from_i64s(&[1, 3, 2]);
        assert_eq!(serde_json::to_string(&p).unwrap(), "[1,3,2]");
    }
}
