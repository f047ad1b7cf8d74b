//! Hyperplane arrangements over an exact field.

pub mod format;
pub mod lattice;
pub mod polynomial;

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::arith::{ExactMatrix, FieldDescriptor, Scalar};
use crate::error::{Error, Result};

pub use lattice::{Flat, IntersectionLattice, LatticeOptions};
pub use polynomial::IntegerPolynomial;

/// The affine hyperplane {x : normal · x = offset}, scaled so the first
/// nonzero coordinate of the normal is 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperplane {
    normal: Vec<Scalar>,
    offset: Scalar,
}

impl Hyperplane {
    /// Canonicalizing constructor. Fails on a zero normal.
    pub fn new(normal: Vec<Scalar>, offset: Scalar) -> Result<Self> {
        let Some(lead) = normal.iter().find(|c| !c.is_zero()) else {
            return Err(Error::invalid("hyperplane with zero normal"));
        };
        let inv = lead.inv().expect("nonzero");
        let normal: Vec<Scalar> = normal.iter().map(|c| c * &inv).collect();
        let offset = &offset * &inv;
        Ok(Hyperplane { normal, offset })
    }

    pub fn normal(&self) -> &[Scalar] {
        &self.normal
    }

    pub fn offset(&self) -> &Scalar {
        &self.offset
    }

    pub fn is_linear(&self) -> bool {
        self.offset.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.normal.iter().all(Scalar::is_real) && self.offset.is_real()
    }

    /// Row (normal | offset).
    pub fn augmented_row(&self) -> Vec<Scalar> {
        let mut r = self.normal.clone();
        r.push(self.offset.clone());
        r
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.normal.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(" "))?;
        if !self.offset.is_zero() {
            write!(f, " = {}", self.offset)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

/// Ordered list of distinct canonical hyperplanes in an ℓ-dimensional space.
/// Order matters downstream (broken circuits use it).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    field: FieldDescriptor,
    ambient_dim: usize,
    hyperplanes: Vec<Hyperplane>,
}

/// A hyperplane before canonicalization: normal and offset.
pub type RawHyperplane = (Vec<Scalar>, Scalar);

impl Arrangement {
    /// Canonicalize and deduplicate, keeping the order of first appearance.
    pub fn build(
        field: FieldDescriptor,
        ambient_dim: usize,
        raw: Vec<RawHyperplane>,
    ) -> Result<Self> {
        let mut hyperplanes: Vec<Hyperplane> = Vec::with_capacity(raw.len());
        let mut seen = std::collections::HashSet::new();
        for (i, (normal, offset)) in raw.into_iter().enumerate() {
            if normal.len() != ambient_dim {
                return Err(Error::invalid(format!(
                    "hyperplane {i} has {} coefficients, ambient dimension is {ambient_dim}",
                    normal.len()
                )));
            }
            if let Some(bad) = normal.iter().chain([&offset]).find(|c| c.field() != field) {
                return Err(Error::invalid(format!(
                    "hyperplane {i} has a coefficient in {}, arrangement field is {field}",
                    bad.field()
                )));
            }
            let h = Hyperplane::new(normal, offset)
                .map_err(|_| Error::invalid(format!("hyperplane {i} has a zero normal")))?;
            if seen.insert(h.clone()) {
                hyperplanes.push(h);
            }
        }
        Ok(Arrangement {
            field,
            ambient_dim,
            hyperplanes,
        })
    }

    /// Central arrangement from integer normals over ℚ.
    pub fn rational_central(ambient_dim: usize, normals: &[Vec<i64>]) -> Result<Self> {
        let f = FieldDescriptor::RATIONAL;
        let raw = normals
            .iter()
            .map(|n| {
                (
                    n.iter().map(|&c| Scalar::from_int(f, c)).collect(),
                    Scalar::zero(f),
                )
            })
            .collect();
        Self::build(f, ambient_dim, raw)
    }

    /// Affine arrangement over ℚ from integer rows (normal…, offset).
    pub fn rational_affine(ambient_dim: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let f = FieldDescriptor::RATIONAL;
        let raw = rows
            .iter()
            .map(|r| {
                let (n, o) = r.split_at(ambient_dim);
                (
                    n.iter().map(|&c| Scalar::from_int(f, c)).collect(),
                    Scalar::from_int(f, o.first().copied().unwrap_or(0)),
                )
            })
            .collect();
        Self::build(f, ambient_dim, raw)
    }

    pub fn empty(field: FieldDescriptor, ambient_dim: usize) -> Self {
        Arrangement {
            field,
            ambient_dim,
            hyperplanes: Vec::new(),
        }
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn is_central(&self) -> bool {
        self.hyperplanes.iter().all(Hyperplane::is_linear)
    }

    /// Same hyperplanes, ignoring order.
    pub fn same_hyperplanes(&self, other: &Arrangement) -> bool {
        let mut a = self.hyperplanes.clone();
        let mut b = other.hyperplanes.clone();
        a.sort();
        b.sort();
        self.field == other.field && self.ambient_dim == other.ambient_dim && a == b
    }

    /// Matrix whose rows are the normals.
    pub fn normal_matrix(&self) -> ExactMatrix {
        let rows = self.hyperplanes.iter().map(|h| h.normal.clone()).collect();
        ExactMatrix::from_rows(self.field, self.ambient_dim, rows).expect("consistent arrangement")
    }

    /// Rank of the normals (the codimension of the smallest nonempty flat).
    pub fn rank(&self) -> usize {
        self.normal_matrix().rank()
    }

    pub fn intersection_lattice(&self) -> Result<IntersectionLattice> {
        IntersectionLattice::build(self, &LatticeOptions::default())
    }

    /// Homogenize: a new coordinate x₀ is prepended, each {f(x) = a} becomes
    /// {f(x) − a·x₀ = 0}, and {x₀ = 0} is appended.
    pub fn cone(&self) -> Arrangement {
        let f = self.field;
        let mut raw: Vec<RawHyperplane> = self
            .hyperplanes
            .iter()
            .map(|h| {
                let mut n = Vec::with_capacity(self.ambient_dim + 1);
                n.push(-&h.offset);
                n.extend(h.normal.iter().cloned());
                (n, Scalar::zero(f))
            })
            .collect();
        let mut x0 = vec![Scalar::zero(f); self.ambient_dim + 1];
        x0[0] = Scalar::one(f);
        raw.push((x0, Scalar::zero(f)));
        Arrangement::build(f, self.ambient_dim + 1, raw).expect("cone of a valid arrangement")
    }

    /// Deletion A ∖ {h} and restriction A^h. The restriction lives on h with
    /// coordinates given by the non-pivot columns of h's normal.
    pub fn deletion_restriction(&self, h: usize) -> Result<(Arrangement, Arrangement)> {
        let Some(target) = self.hyperplanes.get(h) else {
            return Err(Error::invalid(format!(
                "hyperplane index {h} out of range (arrangement has {})",
                self.len()
            )));
        };
        let f = self.field;
        let mut deleted = self.clone();
        deleted.hyperplanes.remove(h);

        // canonical form: the pivot coefficient is 1
        let pivot = target
            .normal
            .iter()
            .position(|c| !c.is_zero())
            .expect("nonzero normal");
        let free: Vec<usize> = (0..self.ambient_dim).filter(|&j| j != pivot).collect();
        let mut raw = Vec::new();
        for (i, g) in self.hyperplanes.iter().enumerate() {
            if i == h {
                continue;
            }
            let cp = &g.normal[pivot];
            let normal: Vec<Scalar> = free
                .iter()
                .map(|&j| &g.normal[j] - &(cp * &target.normal[j]))
                .collect();
            let offset = &g.offset - &(cp * &target.offset);
            if normal.iter().all(Scalar::is_zero) {
                // parallel to h: empty intersection (distinct hyperplanes)
                continue;
            }
            raw.push((normal, offset));
        }
        let restricted = Arrangement::build(f, self.ambient_dim - 1, raw)?;
        Ok((deleted, restricted))
    }

    /// Index of the first hyperplane with a coefficient not fixed by
    /// complex conjugation.
    pub fn first_non_real(&self) -> Option<usize> {
        self.hyperplanes.iter().position(|h| !h.is_real())
    }

    /// Zaslavsky counts (regions, bounded regions) for an arrangement with
    /// real coefficients.
    pub fn region_count(&self) -> Result<RegionCount> {
        let lattice = self.intersection_lattice()?;
        self.region_count_with(&lattice)
    }

    pub fn region_count_with(&self, lattice: &IntersectionLattice) -> Result<RegionCount> {
        if let Some(i) = self.first_non_real() {
            return Err(Error::invalid(format!(
                "hyperplane {i} ({}) has non-real coefficients; region counting needs a real arrangement",
                self.hyperplanes[i]
            )));
        }
        let chi = lattice.characteristic_polynomial();
        let sign = |k: usize| {
            if k.is_multiple_of(2) {
                BigInt::from(1)
            } else {
                BigInt::from(-1)
            }
        };
        let regions = sign(self.ambient_dim) * chi.eval_i64(-1);
        let bounded = sign(lattice.rank()) * chi.eval_i64(1);
        Ok(RegionCount { regions, bounded })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegionCount {
    #[serde(serialize_with = "crate::report::bigint_as_number")]
    pub regions: BigInt,
    #[serde(serialize_with = "crate::report::bigint_as_number")]
    pub bounded: BigInt,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicates_merge_under_scaling() {
        let a = Arrangement::rational_central(2, &[vec![1, 1], vec![2, 2]]).unwrap();
        assert_eq!(a.len(), 1);
        assert!(a.is_central());
    }

    #[test]
    fn zero_normal_rejected() {
        assert!(Arrangement::rational_central(2, &[vec![0, 0]]).is_err());
        assert!(Arrangement::rational_central(2, &[vec![1, 0, 0]]).is_err());
    }

    #[test]
    fn mixed_fields_rejected() {
        let f3 = FieldDescriptor::cyclotomic(3).unwrap();
        let q = FieldDescriptor::RATIONAL;
        let raw = vec![(vec![Scalar::one(q), Scalar::one(q)], Scalar::zero(q))];
        assert!(Arrangement::build(f3, 2, raw).is_err());
    }

    #[test]
    fn canonical_scaling_uses_first_nonzero() {
        let a = Arrangement::rational_affine(2, &[vec![0, 3, 6]]).unwrap();
        assert_eq!(a.hyperplanes()[0].to_string(), "0 1 = 2");
    }

    #[test]
    fn cone_of_empty_line() {
        let c = Arrangement::empty(FieldDescriptor::RATIONAL, 1).cone();
        assert_eq!(c.ambient_dim(), 2);
        assert_eq!(c.len(), 1);
        assert_eq!(c.hyperplanes()[0].to_string(), "1 0");
    }

    #[test]
    fn cone_of_three_points_on_a_line() {
        let a = Arrangement::rational_affine(1, &[vec![1, 0], vec![1, -1], vec![1, 1]]).unwrap();
        let c = a.cone();
        let expected =
            Arrangement::rational_central(2, &[vec![1, 0], vec![0, 1], vec![1, 1], vec![-1, 1]])
                .unwrap();
        assert!(c.same_hyperplanes(&expected));
        assert_eq!(c.len(), a.len() + 1);
    }

    #[test]
    fn boolean_deletion_restriction() {
        let a = Arrangement::rational_central(2, &[vec![1, 0], vec![0, 1]]).unwrap();
        let (d, r) = a.deletion_restriction(0).unwrap();
        assert_eq!(d, Arrangement::rational_central(2, &[vec![0, 1]]).unwrap());
        assert_eq!(r, Arrangement::rational_central(1, &[vec![1]]).unwrap());
        assert!(a.deletion_restriction(2).is_err());
    }

    #[test]
    fn braid_restriction_merges_images() {
        let a = Arrangement::rational_central(3, &[vec![1, -1, 0], vec![1, 0, -1], vec![0, 1, -1]])
            .unwrap();
        let (_, r) = a.deletion_restriction(0).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r.ambient_dim(), 2);
    }

    #[test]
    fn single_hyperplane_regions() {
        let a = Arrangement::rational_central(2, &[vec![1, 0]]).unwrap();
        let rc = a.region_count().unwrap();
        assert_eq!(rc.regions, BigInt::from(2));
        assert_eq!(rc.bounded, BigInt::from(0));
    }

    #[test]
    fn four_concurrent_lines_have_eight_regions() {
        let a =
            Arrangement::rational_central(2, &[vec![1, 0], vec![0, 1], vec![1, 1], vec![1, -1]])
                .unwrap();
        assert_eq!(a.region_count().unwrap().regions, BigInt::from(8));
    }

    #[test]
    fn affine_regions_and_bounded() {
        // three points on a line: 4 intervals, 2 bounded
        let a = Arrangement::rational_affine(1, &[vec![1, 0], vec![1, -1], vec![1, 1]]).unwrap();
        let rc = a.region_count().unwrap();
        assert_eq!((rc.regions, rc.bounded), (BigInt::from(4), BigInt::from(2)));
        // generic triangle of lines: 7 regions, 1 bounded
        let t = Arrangement::rational_affine(2, &[vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 1]])
            .unwrap();
        let rc = t.region_count().unwrap();
        assert_eq!((rc.regions, rc.bounded), (BigInt::from(7), BigInt::from(1)));
    }

    #[test]
    fn non_real_arrangement_is_refused() {
        let f = FieldDescriptor::cyclotomic(3).unwrap();
        let p = |t: &str| Scalar::parse(t, f).unwrap();
        let raw = vec![
            (vec![p("1"), p("1")], p("0")),
            (vec![p("(0,1)"), p("(-1,-1)")], p("0")),
        ];
        let a = Arrangement::build(f, 2, raw).unwrap();
        let err = a.region_count().unwrap_err().to_string();
        assert!(err.contains("hyperplane 1"), "{err}");
    }
}
