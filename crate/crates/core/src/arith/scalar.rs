use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::FieldDescriptor;
use crate::error::{Error, Result};

/// Exact element of ℚ or ℚ(ζ_N).
///
/// Coordinates are taken in the power basis 1, ζ, …, ζ^{d−1} with d = φ(N),
/// always reduced modulo Φ_N, so two scalars are equal iff their coordinate
/// vectors are identical.
///
/// Arithmetic operators panic when the operands live in different fields;
/// use the `checked_*` methods at trust boundaries.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    field: FieldDescriptor,
    coords: Box<[BigRational]>,
}

impl Scalar {
    pub fn zero(field: FieldDescriptor) -> Self {
        Scalar {
            field,
            coords: vec![BigRational::zero(); field.degree()].into_boxed_slice(),
        }
    }

    pub fn one(field: FieldDescriptor) -> Self {
        Self::from_rational(field, BigRational::one())
    }

    pub fn from_int(field: FieldDescriptor, n: i64) -> Self {
        Self::from_rational(field, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(field: FieldDescriptor, q: BigRational) -> Self {
        let mut coords = vec![BigRational::zero(); field.degree()];
        coords[0] = q;
        Scalar {
            field,
            coords: coords.into_boxed_slice(),
        }
    }

    /// ζ_N itself.
    pub fn zeta(field: FieldDescriptor) -> Self {
        let mut v = vec![BigRational::zero(); 2];
        v[1] = BigRational::one();
        Self::reduce_unchecked(field, v)
    }

    /// Canonical representative of Σ c_k ζ^k modulo Φ_N.
    ///
    /// Accepts at most N coordinates (one full period of ζ).
    pub fn cyclotomic_reduce(poly_coords: &[BigRational], field: FieldDescriptor) -> Result<Self> {
        let n = field.conductor() as usize;
        if poly_coords.len() > n.max(1) {
            return Err(Error::invalid(format!(
                "{} coordinates given for conductor {}",
                poly_coords.len(),
                n
            )));
        }
        Ok(Self::reduce_unchecked(field, poly_coords.to_vec()))
    }

    /// Build from coordinates that are already in the power basis of length φ(N).
    pub fn from_coords(field: FieldDescriptor, coords: Vec<BigRational>) -> Result<Self> {
        if coords.len() != field.degree() {
            return Err(Error::invalid(format!(
                "expected {} coordinates for {}, got {}",
                field.degree(),
                field,
                coords.len()
            )));
        }
        Ok(Scalar {
            field,
            coords: coords.into_boxed_slice(),
        })
    }

    fn reduce_unchecked(field: FieldDescriptor, mut poly: Vec<BigRational>) -> Self {
        let d = field.degree();
        if poly.len() > d {
            let modulus = field.modulus();
            // Φ_N is monic of degree d
            for i in (d..poly.len()).rev() {
                let c = std::mem::take(&mut poly[i]);
                if c.is_zero() {
                    continue;
                }
                for (j, m) in modulus.iter().take(d).enumerate() {
                    if !m.is_zero() {
                        let t = &c * BigRational::from_integer(m.clone());
                        poly[i - d + j] -= t;
                    }
                }
            }
            poly.truncate(d);
        }
        poly.resize(d, BigRational::zero());
        Scalar {
            field,
            coords: poly.into_boxed_slice(),
        }
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, when the element lies in ℚ.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coords[1..].iter().all(Zero::is_zero) {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    /// Re-express a rational scalar inside ℚ(ζ_N).
    pub fn promote(&self, target: FieldDescriptor) -> Result<Self> {
        if self.field == target {
            return Ok(self.clone());
        }
        match self.as_rational() {
            Some(q) if self.field.is_rational() => Ok(Self::from_rational(target, q.clone())),
            _ => Err(Error::invalid(format!(
                "cannot promote an element of {} to {}",
                self.field, target
            ))),
        }
    }

    fn same_field(&self, other: &Scalar) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::invalid(format!(
                "mixed fields: {} and {}",
                self.field, other.field
            )))
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(self + other)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(self * other)
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        if self.field.degree() == 1 {
            return Some(Self::from_rational(self.field, self.coords[0].recip()));
        }
        let modulus: Vec<BigRational> = self
            .field
            .modulus()
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let inv = super::poly::inverse_mod(&self.coords, &modulus)?;
        Some(Self::reduce_unchecked(self.field, inv))
    }

    /// Panics on division by zero.
    pub fn div(&self, other: &Scalar) -> Scalar {
        self * &other.inv().expect("division by zero scalar")
    }

    /// Complex conjugation ζ ↦ ζ^{N−1}.
    pub fn conjugate(&self) -> Scalar {
        let n = self.field.conductor() as usize;
        if self.field.degree() == 1 {
            return self.clone();
        }
        let mut poly = vec![BigRational::zero(); n];
        for (k, c) in self.coords.iter().enumerate() {
            poly[(k * (n - 1)) % n] += c;
        }
        Self::reduce_unchecked(self.field, poly)
    }

    pub fn is_real(&self) -> bool {
        self.conjugate() == *self
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Parse one token of the scalar text syntax: `p`, `p/q`, or `(a0,…,a_{d−1})`.
    /// A plain rational token is accepted in any field.
    pub fn parse(token: &str, field: FieldDescriptor) -> Result<Scalar> {
        let t = token.trim();
        if let Some(inner) = t.strip_prefix('(') {
            let inner = inner
                .strip_suffix(')')
                .ok_or_else(|| Error::invalid(format!("unbalanced parenthesis in `{t}`")))?;
            let parts: Vec<BigRational> = inner
                .split(',')
                .map(parse_rational)
                .collect::<Result<_>>()?;
            if parts.len() != field.degree() {
                return Err(Error::invalid(format!(
                    "`{t}` has {} coordinates, field {} needs {}",
                    parts.len(),
                    field,
                    field.degree()
                )));
            }
            Scalar::from_coords(field, parts)
        } else {
            Ok(Scalar::from_rational(field, parse_rational(t)?))
        }
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::invalid(format!("malformed rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::invalid(format!("zero denominator in `{s}`")));
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return f.write_str(&fmt_rational(q));
        }
        let parts: Vec<String> = self.coords.iter().map(fmt_rational).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn assert_same(a: &Scalar, b: &Scalar) {
    assert_eq!(a.field, b.field, "scalar field mismatch");
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        assert_same(self, rhs);
        let coords = self
            .coords
            .iter()
            .zip(rhs.coords.iter())
            .map(|(a, b)| a + b)
            .collect();
        Scalar {
            field: self.field,
            coords,
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        assert_same(self, rhs);
        let coords = self
            .coords
            .iter()
            .zip(rhs.coords.iter())
            .map(|(a, b)| a - b)
            .collect();
        Scalar {
            field: self.field,
            coords,
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            field: self.field,
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        assert_same(self, rhs);
        let d = self.field.degree();
        if d == 1 {
            return Scalar {
                field: self.field,
                coords: vec![&self.coords[0] * &rhs.coords[0]].into_boxed_slice(),
            };
        }
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coords.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Scalar::reduce_unchecked(self.field, prod)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Clear denominators of a rational vector: returns the primitive integer
/// vector with the same direction (sign preserved).
pub fn primitive_integer_vector(v: &[BigRational]) -> Vec<BigInt> {
    use num_integer::Integer;
    let lcm = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = v.iter().map(|q| (q * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}
