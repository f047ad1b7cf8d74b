//! Intersection lattice L(𝒜), built level by level, with its Möbius function.
//!
//! A flat is stored as the reduced row echelon form of its defining
//! equations (normal | offset). Because rref is canonical over an exact
//! field, two intersections describe the same subspace iff their rrefs are
//! identical, which is what deduplication keys on. Each flat also carries the
//! full set of hyperplanes containing it, so the lattice order is inclusion of
//! those sets.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;

use super::{Arrangement, IntegerPolynomial};
use crate::arith::{ExactMatrix, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct LatticeOptions {
    pub max_flats: usize,
}

impl LatticeOptions {
    pub const DEFAULT_MAX_FLATS: usize = 2_000_000;
}

impl Default for LatticeOptions {
    fn default() -> Self {
        LatticeOptions {
            max_flats: Self::DEFAULT_MAX_FLATS,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Flat {
    /// Nonzero rref rows of the augmented system, ℓ+1 columns each.
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
    contains: FixedBitSet,
}

impl Flat {
    pub fn codim(&self) -> usize {
        self.rows.len()
    }

    /// Hyperplanes (by arrangement index) containing this flat.
    pub fn contains(&self) -> &FixedBitSet {
        &self.contains
    }

    pub fn contained_hyperplanes(&self) -> Vec<usize> {
        self.contains.ones().collect()
    }

    pub fn equations(&self, cols: usize) -> ExactMatrix {
        let field = self.rows.first().map(|r| r[0].field());
        match field {
            Some(f) => ExactMatrix::from_rows(f, cols, self.rows.clone()).expect("flat rows"),
            None => ExactMatrix::zeros(crate::arith::FieldDescriptor::RATIONAL, 0, cols),
        }
    }

    fn key(&self) -> String {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        rows.join(";")
    }

    /// Residual of `v` after eliminating this flat's pivot columns.
    fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = &*x - &(&c * r);
                }
            }
        }
        v
    }

    fn lies_in(&self, augmented: &[Scalar]) -> bool {
        self.reduce(augmented).iter().all(Scalar::is_zero)
    }

    /// Intersection with one more hyperplane (given as an augmented row).
    /// `None` when the intersection is empty or the hyperplane already
    /// contains the flat.
    fn meet(&self, augmented: &[Scalar]) -> Option<(Vec<Vec<Scalar>>, Vec<usize>)> {
        let mut v = self.reduce(augmented);
        let last = v.len() - 1;
        let c = v.iter().position(|x| !x.is_zero())?;
        if c == last {
            return None;
        }
        let inv = v[c].inv().expect("nonzero");
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let mut rows = Vec::with_capacity(self.rows.len() + 1);
        let mut pivots = Vec::with_capacity(self.rows.len() + 1);
        let mut inserted = false;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !inserted && p > c {
                rows.push(v.clone());
                pivots.push(c);
                inserted = true;
            }
            let mut r = row.clone();
            if !r[c].is_zero() {
                let f = r[c].clone();
                for (x, y) in r.iter_mut().zip(&v) {
                    if !y.is_zero() {
                        *x = &*x - &(&f * y);
                    }
                }
            }
            rows.push(r);
            pivots.push(p);
        }
        if !inserted {
            rows.push(v);
            pivots.push(c);
        }
        Some((rows, pivots))
    }
}

/// Nonempty intersections of subfamilies, grouped by codimension, with
/// μ(ambient, X) for every flat.
#[derive(Clone, Debug)]
pub struct IntersectionLattice {
    ambient_dim: usize,
    num_hyperplanes: usize,
    flats: Vec<Flat>,
    /// `levels[k]` is the range of flat indices of codimension k.
    levels: Vec<std::ops::Range<usize>>,
    moebius: Vec<i64>,
}

impl IntersectionLattice {
    pub fn build(arr: &Arrangement, opts: &LatticeOptions) -> Result<Self> {
        let n = arr.len();
        let ell = arr.ambient_dim();
        let rows: Vec<Vec<Scalar>> = arr
            .hyperplanes()
            .iter()
            .map(|h| h.augmented_row())
            .collect();

        let ambient = Flat {
            rows: Vec::new(),
            pivots: Vec::new(),
            contains: FixedBitSet::with_capacity(n),
        };
        let mut flats = vec![ambient];
        let mut levels: Vec<std::ops::Range<usize>> = std::iter::once(0..1).collect();
        let mut counts = vec![1usize];

        loop {
            let prev = levels.last().unwrap().clone();
            let mut index: HashMap<Vec<Vec<Scalar>>, usize> = HashMap::new();
            let mut next: Vec<Flat> = Vec::new();
            for fi in prev {
                let x = &flats[fi];
                for (hi, row) in rows.iter().enumerate() {
                    if x.contains.contains(hi) {
                        continue;
                    }
                    let Some((new_rows, pivots)) = x.meet(row) else {
                        continue;
                    };
                    if index.contains_key(&new_rows) {
                        continue;
                    }
                    let mut flat = Flat {
                        rows: new_rows,
                        pivots,
                        contains: FixedBitSet::with_capacity(n),
                    };
                    for (gi, g) in rows.iter().enumerate() {
                        if flat.lies_in(g) {
                            flat.contains.insert(gi);
                        }
                    }
                    index.insert(flat.rows.clone(), next.len());
                    next.push(flat);
                    if flats.len() + next.len() > opts.max_flats {
                        counts.push(next.len());
                        return Err(Error::cap(
                            "intersection lattice flat count",
                            opts.max_flats as u64,
                            counts,
                        ));
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            let mut keyed: Vec<(String, Flat)> = next.into_iter().map(|f| (f.key(), f)).collect();
            keyed.sort_by(|a, b| a.0.cmp(&b.0));
            let start = flats.len();
            flats.extend(keyed.into_iter().map(|(_, f)| f));
            levels.push(start..flats.len());
            counts.push(flats.len() - start);
            if levels.len() > ell + 1 {
                unreachable!("flat codimension exceeds ambient dimension");
            }
        }

        let moebius = compute_moebius(&flats, &levels);
        Ok(IntersectionLattice {
            ambient_dim: ell,
            num_hyperplanes: n,
            flats,
            levels,
            moebius,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn num_hyperplanes(&self) -> usize {
        self.num_hyperplanes
    }

    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn moebius(&self) -> &[i64] {
        &self.moebius
    }

    /// Flats (indices) of codimension `k`.
    pub fn level(&self, k: usize) -> std::ops::Range<usize> {
        self.levels.get(k).cloned().unwrap_or(0..0)
    }

    pub fn flats_per_level(&self) -> Vec<usize> {
        self.levels.iter().map(|r| r.len()).collect()
    }

    /// Largest codimension of a flat.
    pub fn rank(&self) -> usize {
        self.levels.len() - 1
    }

    /// Y ≤ X in L(𝒜), i.e. Y ⊇ X as subspaces.
    pub fn le(&self, y: usize, x: usize) -> bool {
        self.flats[y].contains.is_subset(&self.flats[x].contains)
    }

    /// Σ_X μ(X) t^{dim X}
    pub fn characteristic_polynomial(&self) -> IntegerPolynomial {
        let mut c = vec![BigInt::from(0); self.ambient_dim + 1];
        for (k, range) in self.levels.iter().enumerate() {
            for i in range.clone() {
                c[self.ambient_dim - k] += self.moebius[i];
            }
        }
        IntegerPolynomial::new(c)
    }

    /// Σ_X μ(X) (−t)^{codim X}
    pub fn poincare_polynomial(&self) -> IntegerPolynomial {
        let mut c = vec![BigInt::from(0); self.ambient_dim + 1];
        for (k, range) in self.levels.iter().enumerate() {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            for i in range.clone() {
                c[k] += sign * self.moebius[i];
            }
        }
        IntegerPolynomial::new(c)
    }

    /// Σ_X |μ(X)| = π(𝒜, 1), the total Orlik–Solomon dimension.
    pub fn os_dimension(&self) -> BigInt {
        self.moebius
            .iter()
            .map(|m| BigInt::from(m.unsigned_abs()))
            .sum()
    }

    /// Σ_i (i+1)·μ(X_i) over the canonical flat order; a cheap fingerprint
    /// of both the lattice ordering and its Möbius values.
    pub fn moebius_checksum(&self) -> i128 {
        self.moebius
            .iter()
            .enumerate()
            .map(|(i, &m)| (i as i128 + 1) * m as i128)
            .sum()
    }

    /// Canonical textual keys of all flats, in lattice order.
    pub fn flat_keys(&self) -> Vec<String> {
        self.flats.iter().map(Flat::key).collect()
    }
}

fn compute_moebius(flats: &[Flat], levels: &[std::ops::Range<usize>]) -> Vec<i64> {
    let mut mu = vec![0i64; flats.len()];
    mu[0] = 1;
    for (k, range) in levels.iter().enumerate().skip(1) {
        let below = 0..levels[k - 1].end;
        for x in range.clone() {
            let cx = &flats[x].contains;
            let s: i64 = below
                .clone()
                .filter(|&y| flats[y].contains.is_subset(cx))
                .map(|y| mu[y])
                .sum();
            mu[x] = -s;
        }
    }
    mu
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::FieldDescriptor;

    fn g4() -> Arrangement {
        let f = FieldDescriptor::cyclotomic(3).unwrap();
        let p = |t: &str| Scalar::parse(t, f).unwrap();
        Arrangement::build(
            f,
            2,
            vec![
                (vec![p("1"), p("1")], p("0")),
                (vec![p("(0,1)"), p("(-1,-1)")], p("0")),
                (vec![p("(-1,-1)"), p("(0,1)")], p("0")),
            ],
        )
        .unwrap()
    }

    #[test]
    fn empty_arrangement_has_one_flat() {
        let l = Arrangement::empty(FieldDescriptor::RATIONAL, 3)
            .intersection_lattice()
            .unwrap();
        assert_eq!(l.flats().len(), 1);
        assert_eq!(l.moebius(), &[1]);
        assert_eq!(
            l.characteristic_polynomial(),
            IntegerPolynomial::from_i64s(&[0, 0, 0, 1])
        );
    }

    #[test]
    fn boolean_arrangement() {
        let a = Arrangement::rational_central(3, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]])
            .unwrap();
        let l = a.intersection_lattice().unwrap();
        assert_eq!(l.flats().len(), 8);
        assert_eq!(l.flats_per_level(), vec![1, 3, 3, 1]);
        for (i, f) in l.flats().iter().enumerate() {
            let expect = if f.codim() % 2 == 0 { 1 } else { -1 };
            assert_eq!(l.moebius()[i], expect);
        }
        // (t-1)^3
        assert_eq!(
            l.characteristic_polynomial(),
            IntegerPolynomial::from_i64s(&[-1, 3, -3, 1])
        );
    }

    #[test]
    fn g4_lattice() {
        let l = g4().intersection_lattice().unwrap();
        assert_eq!(l.flats_per_level(), vec![1, 3, 1]);
        assert_eq!(l.moebius(), &[1, -1, -1, -1, 2]);
        assert_eq!(
            l.characteristic_polynomial(),
            IntegerPolynomial::from_i64s(&[2, -3, 1])
        );
        assert_eq!(
            l.poincare_polynomial(),
            IntegerPolynomial::from_i64s(&[1, 3, 2])
        );
        assert_eq!(l.os_dimension(), BigInt::from(6));
    }

    #[test]
    fn braid_arrangement() {
        let a = Arrangement::rational_central(3, &[vec![1, -1, 0], vec![1, 0, -1], vec![0, 1, -1]])
            .unwrap();
        let chi = a
            .intersection_lattice()
            .unwrap()
            .characteristic_polynomial();
        // t(t-1)(t-2)
        assert_eq!(chi, IntegerPolynomial::from_i64s(&[0, 2, -3, 1]));
        assert_eq!(chi.eval_i64(7), BigInt::from(210));
    }

    #[test]
    fn single_hyperplane_poincare() {
        let a = Arrangement::rational_central(4, &[vec![0, 1, 2, 3]]).unwrap();
        let l = a.intersection_lattice().unwrap();
        assert_eq!(
            l.poincare_polynomial(),
            IntegerPolynomial::from_i64s(&[1, 1])
        );
    }

    #[test]
    fn parallel_lines_do_not_meet() {
        let a = Arrangement::rational_affine(2, &[vec![1, 0, 0], vec![1, 0, 1], vec![0, 1, 0]])
            .unwrap();
        let l = a.intersection_lattice().unwrap();
        assert_eq!(l.flats_per_level(), vec![1, 3, 2]);
        assert_eq!(
            l.poincare_polynomial(),
            IntegerPolynomial::from_i64s(&[1, 3, 2])
        );
    }

    #[test]
    fn flat_cap_is_reported() {
        let a = Arrangement::rational_central(3, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]])
            .unwrap();
        let err = IntersectionLattice::build(&a, &LatticeOptions { max_flats: 5 }).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("partial"), "{err}");
    }

    #[test]
    fn contains_sets_are_closed() {
        let a = Arrangement::rational_central(2, &[vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        let l = a.intersection_lattice().unwrap();
        let origin = &l.flats()[l.level(2).start];
        assert_eq!(origin.contained_hyperplanes(), vec![0, 1, 2]);
    }
}
