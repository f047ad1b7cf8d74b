mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use common::{arrangements, config, poincare_from_chi, rational_rows, whitney_chi};
use sympres::arith::{ExactMatrix, FieldDescriptor, Scalar};
use sympres::arrangement::format::{parse_arrangement, serialize_arrangement};
use sympres::arrangement::LatticeOptions;
use sympres::group::format::parse_group;
use sympres::matroid::{self, LinearMatroid, MatroidOptions};
use sympres::IntersectionLattice;

const CONDUCTORS: [u32; 6] = [1, 3, 4, 5, 8, 12];

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn scalar_in(f: FieldDescriptor) -> impl Strategy<Value = Scalar> {
    proptest::collection::vec(small_rational(), f.degree())
        .prop_map(move |c| Scalar::from_coords(f, c).expect("degree-sized coords"))
}

fn field() -> impl Strategy<Value = FieldDescriptor> {
    proptest::sample::select(CONDUCTORS.to_vec())
        .prop_map(|n| FieldDescriptor::cyclotomic(n).expect("small conductor"))
}

fn triple() -> impl Strategy<Value = (Scalar, Scalar, Scalar)> {
    field().prop_flat_map(|f| (scalar_in(f), scalar_in(f), scalar_in(f)))
}

fn matrix() -> impl Strategy<Value = ExactMatrix> {
    (field(), 1usize..=4, 1usize..=4).prop_flat_map(|(f, r, c)| {
        proptest::collection::vec(
            // sparse entries make rank deficiency likely
            prop_oneof![2 => Just(None), 3 => scalar_in(f).prop_map(Some)],
            r * c,
        )
        .prop_map(move |entries| {
            let data = entries
                .into_iter()
                .map(|e| e.unwrap_or_else(|| Scalar::zero(f)))
                .collect();
            ExactMatrix::new(f, r, c, data).expect("sized")
        })
    })
}

proptest! {
    #![proptest_config(config(256))]

    #[test]
    fn addition_and_multiplication_associate((a, b, c) in triple()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn multiplication_distributes((a, b, c) in triple()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn nonzero_elements_are_invertible((a, _, _) in triple()) {
        match a.inv() {
            Some(i) => prop_assert!((&a * &i).is_one()),
            None => prop_assert!(a.is_zero()),
        }
    }

    #[test]
    fn difference_vanishes_iff_coordinates_agree((a, b, _) in triple()) {
        prop_assert_eq!((&a - &b).is_zero(), a.coords() == b.coords());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn conjugation_is_a_field_automorphism((a, b, _) in triple()) {
        prop_assert_eq!((&a * &b).conjugate(), &a.conjugate() * &b.conjugate());
        prop_assert_eq!((&a + &b).conjugate(), &a.conjugate() + &b.conjugate());
        prop_assert_eq!(a.conjugate().conjugate(), a);
    }

    #[test]
    fn display_parses_back((a, _, _) in triple()) {
        let back = Scalar::parse(&a.to_string(), a.field()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn rank_is_invariant_under_transpose(m in matrix()) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
        prop_assert!(m.rank() <= m.rows().min(m.cols()));
    }

    #[test]
    fn kernel_vectors_are_annihilated(m in matrix()) {
        let ker = m.kernel();
        prop_assert_eq!(ker.len() + m.rank(), m.cols());
        for v in ker {
            prop_assert!(m.mul_vec(&v).iter().all(Scalar::is_zero));
        }
    }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn arrangement_text_round_trips(a in arrangements(4, 8, false)) {
        let text = serialize_arrangement(&a);
        let back = parse_arrangement(&text).unwrap();
        prop_assert!(back.same_hyperplanes(&a));
        prop_assert_eq!(serialize_arrangement(&back), text);
    }

    #[test]
    fn lattice_is_deterministic(a in arrangements(4, 8, false)) {
        let opts = LatticeOptions::default();
        let l1 = IntersectionLattice::build(&a, &opts).unwrap();
        let l2 = IntersectionLattice::build(&a, &opts).unwrap();
        prop_assert_eq!(l1.flat_keys(), l2.flat_keys());
        prop_assert_eq!(l1.moebius(), l2.moebius());
    }

    #[test]
    fn poincare_signs_match_moebius(a in arrangements(4, 9, false)) {
        let l = IntersectionLattice::build(&a, &LatticeOptions::default()).unwrap();
        let pi = l.poincare_polynomial();
        prop_assert!(pi.is_nonnegative());
        for k in 0..=l.rank() {
            let s: i64 = l.level(k).map(|x| l.moebius()[x]).sum();
            let expected = if k % 2 == 0 { s } else { -s };
            prop_assert_eq!(pi.coefficient(k), BigInt::from(expected));
        }
    }

    #[test]
    fn nbc_betti_matches_the_lattice(a in arrangements(4, 9, false)) {
        let l = IntersectionLattice::build(&a, &LatticeOptions::default()).unwrap();
        let betti = matroid::nbc_betti(&a, &MatroidOptions::default()).unwrap();
        let betti: Vec<BigInt> = betti.into_iter().map(BigInt::from).collect();
        let pi = l.poincare_polynomial();
        prop_assert_eq!(betti.as_slice(), pi.coefficients());
    }

    #[test]
    fn nbc_bases_count_top_moebius(a in arrangements(4, 9, true)) {
        let l = IntersectionLattice::build(&a, &LatticeOptions::default()).unwrap();
        let counts = LinearMatroid::of_normals(&a).nbc_counts(&MatroidOptions::default()).unwrap();
        let r = l.rank();
        let top: i64 = l.level(r).map(|x| l.moebius()[x].abs()).sum();
        prop_assert_eq!(counts.get(r).copied().unwrap_or(0), top as u64);
    }

    #[test]
    fn whitney_poincare_agrees_on_central_inputs(a in arrangements(3, 8, true)) {
        let chi = whitney_chi(a.ambient_dim(), &rational_rows(&a));
        let l = IntersectionLattice::build(&a, &LatticeOptions::default()).unwrap();
        let expected = poincare_from_chi(a.ambient_dim(), &chi);
        let pi = l.poincare_polynomial();
        prop_assert_eq!(pi.coefficients(), expected.as_slice());
    }

    #[test]
    fn finite_field_counts_agree_at_good_primes(a in arrangements(3, 6, false)) {
        let opts = MatroidOptions::default();
        let chi = IntersectionLattice::build(&a, &LatticeOptions::default())
            .unwrap()
            .characteristic_polynomial();
        for q in matroid::good_primes(&a, 2, 6, &opts).unwrap() {
            let points = matroid::finite_field_count(&a, q, &opts).unwrap();
            prop_assert_eq!(BigInt::from(points), chi.eval(&BigInt::from(q)), "q = {}", q);
        }
    }
}

/// Brute-force circuits: dependent subsets whose one-element deletions are all
/// independent.
fn brute_circuits(m: &LinearMatroid) -> Vec<Vec<usize>> {
    let n = m.len();
    let mut out: Vec<Vec<usize>> = Vec::new();
    for mask in 1u32..(1 << n) {
        let s: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let dependent = m.rank(&s) < s.len();
        let minimal = s.iter().all(|&drop| {
            let t: Vec<usize> = s.iter().copied().filter(|&i| i != drop).collect();
            m.rank(&t) == t.len()
        });
        if dependent && minimal {
            out.push(s);
        }
    }
    out.sort();
    out
}

proptest! {
    #![proptest_config(config(128))]

    #[test]
    fn circuits_match_brute_force(a in arrangements(3, 8, true)) {
        let m = LinearMatroid::of_normals(&a);
        let found = m.circuits(&MatroidOptions::default()).unwrap();
        prop_assert_eq!(found.circuits.clone(), brute_circuits(&m));
    }

    #[test]
    fn arrangement_parser_never_panics(text in "[a-z_ 0-9()/,\\-#\n]{0,120}") {
        let _ = parse_arrangement(&text);
    }

    #[test]
    fn arrangement_parser_survives_mutated_input(
        cut in 0usize..200,
        junk in "[ 0-9a-z()/,\\-]{0,6}",
    ) {
        let base = sympres::catalog::G4_ARRANGEMENT;
        let cut = cut.min(base.len());
        let cut = (0..=cut).rev().find(|&i| base.is_char_boundary(i)).unwrap();
        let text = format!("{}{junk}{}", &base[..cut], &base[cut..]);
        let _ = parse_arrangement(&text);
    }

    #[test]
    fn group_parser_never_panics(text in "(field|dim|symplectic_form|generator|[0-9 ()/,\\-]){0,40}(\n[0-9 \\-]{0,12}){0,8}") {
        let _ = parse_group(&text);
    }
}
