//! Oracles shared by the integration tests. They use their own rational
//! elimination so that they share no code with the lattice route.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

use sympres::arith::{FieldDescriptor, Scalar};
use sympres::arrangement::RawHyperplane;
use sympres::Arrangement;

/// Seed for every randomized suite in this crate.
pub const SEED: u64 = 0x5eed_2024_0a11;

pub fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(SEED),
        failure_persistence: None,
        ..Config::default()
    }
}

fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = &row[c] / &pivot[c];
                for (x, p) in row.iter_mut().zip(&pivot).skip(c) {
                    *x -= &f * p;
                }
            }
        }
        r += 1;
    }
    r
}

/// (normal, offset) pairs of a rational arrangement.
pub fn rational_rows(a: &Arrangement) -> Vec<(Vec<BigRational>, BigRational)> {
    a.hyperplanes()
        .iter()
        .map(|h| {
            let q = |s: &Scalar| s.as_rational().expect("rational").clone();
            (h.normal().iter().map(q).collect(), q(h.offset()))
        })
        .collect()
}

/// χ(t) = Σ over subsets S with nonempty intersection of (−1)^{|S|} t^{dim ∩S},
/// as coefficients indexed by the power of t.
pub fn whitney_chi(ell: usize, rows: &[(Vec<BigRational>, BigRational)]) -> Vec<BigInt> {
    let n = rows.len();
    assert!(n <= 20, "Whitney oracle is exponential");
    let mut coeffs = vec![BigInt::zero(); ell + 1];
    for mask in 0u32..(1 << n) {
        let chosen: Vec<_> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let normals: Vec<Vec<BigRational>> = chosen.iter().map(|&i| rows[i].0.clone()).collect();
        let augmented: Vec<Vec<BigRational>> = chosen
            .iter()
            .map(|&i| {
                let mut r = rows[i].0.clone();
                r.push(rows[i].1.clone());
                r
            })
            .collect();
        let rn = if normals.is_empty() { 0 } else { rank(normals) };
        let ra = if augmented.is_empty() {
            0
        } else {
            rank(augmented)
        };
        if rn != ra {
            continue; // empty intersection
        }
        let sign = if chosen.len() % 2 == 0 { 1 } else { -1 };
        coeffs[ell - rn] += BigInt::from(sign);
    }
    while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    coeffs
}

/// Regions of a real arrangement by r(A) = r(A ∖ H) + r(A^H), never touching
/// the characteristic polynomial.
pub fn regions_by_recursion(a: &Arrangement) -> BigInt {
    if a.is_empty() {
        return BigInt::one();
    }
    let last = a.len() - 1;
    let (del, res) = a.deletion_restriction(last).expect("valid index");
    regions_by_recursion(&del) + regions_by_recursion(&res)
}

/// Poincaré coefficients from χ: b_k = |coefficient of t^{ℓ−k}|, since the
/// signs of χ alternate.
pub fn poincare_from_chi(ell: usize, chi: &[BigInt]) -> Vec<BigInt> {
    let mut b: Vec<BigInt> = (0..=ell)
        .map(|k| chi.get(ell - k).cloned().unwrap_or_default().abs())
        .collect();
    while b.len() > 1 && b.last().is_some_and(Zero::is_zero) {
        b.pop();
    }
    b
}

pub fn int_vec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Random rational arrangements with small integer coefficients (so that
/// coincidences and parallel hyperplanes are common).
pub fn arrangements(
    max_dim: usize,
    max_len: usize,
    central: bool,
) -> impl Strategy<Value = Arrangement> {
    (1..=max_dim).prop_flat_map(move |ell| {
        let coeff = -2i64..=2;
        let offset = if central { 0i64..=0 } else { -2i64..=2 };
        proptest::collection::vec((proptest::collection::vec(coeff, ell), offset), 0..=max_len)
            .prop_map(move |rows| {
                let f = FieldDescriptor::RATIONAL;
                let raw: Vec<RawHyperplane> = rows
                    .into_iter()
                    .map(|(mut n, b)| {
                        if n.iter().all(|&x| x == 0) {
                            n[0] = 1;
                        }
                        (
                            n.into_iter().map(|x| Scalar::from_int(f, x)).collect(),
                            Scalar::from_int(f, b),
                        )
                    })
                    .collect();
                Arrangement::build(f, ell, raw).expect("nonzero normals")
            })
    })
}

/// ∏ ((n−1)h + e_i + 1) / (e_i + 1) evaluated with the exponent tables
/// written out here.
pub fn wreath_closed_form_oracle(ty: &str, n: u64) -> (u64, u64) {
    let (exps, h): (Vec<u64>, u64) = match ty {
        "A1" => (vec![1], 2),
        "A2" => (vec![1, 2], 3),
        "A3" => (vec![1, 2, 3], 4),
        "D4" => (vec![1, 3, 3, 5], 6),
        "E6" => (vec![1, 4, 5, 7, 8, 11], 12),
        "E7" => (vec![1, 5, 7, 9, 11, 13, 17], 18),
        "E8" => (vec![1, 7, 11, 13, 17, 19, 23, 29], 30),
        _ => panic!("no table for {ty}"),
    };
    let num: u128 = exps
        .iter()
        .map(|&e| ((n - 1) * h + e + 1) as u128)
        .product();
    let den: u128 = exps.iter().map(|&e| (e + 1) as u128).product();
    assert_eq!(num % den, 0);
    let weyl = if n >= 2 { 2 * den } else { den };
    ((num / den) as u64, weyl as u64)
}
