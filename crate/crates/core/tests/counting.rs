mod common;

use num_bigint::BigInt;

use common::{regions_by_recursion, wreath_closed_form_oracle};
use sympres::arrangement::LatticeOptions;
use sympres::catalog::catalog;
use sympres::counting::{
    count_resolutions, namikawa_weyl_from_group, wreath_count_closed_form, wreath_count_direct,
    wreath_weyl_data, NamikawaWeylData,
};
use sympres::group::{analyze, DEFAULT_MAX_ORDER};
use sympres::roots::{affine_catalan, catalan_arrangement, CatalanSpec, DynkinType, WeylTypeData};
use sympres::{Arrangement, Error, IntersectionLattice};

const TYPES: [&str; 7] = ["A1", "A2", "A3", "D4", "E6", "E7", "E8"];

fn spec(label: &str, n: u64) -> CatalanSpec {
    CatalanSpec::new(label.parse::<DynkinType>().unwrap(), n).unwrap()
}

#[test]
fn catalan_is_the_cone_of_the_affine_arrangement() {
    for ty in TYPES {
        for n in 1..=3 {
            let s = spec(ty, n);
            assert!(
                catalan_arrangement(&s).same_hyperplanes(&affine_catalan(&s).cone()),
                "{ty}, n = {n}"
            );
        }
    }
}

#[test]
fn closed_form_matches_the_written_out_tables() {
    for ty in TYPES {
        let data = WeylTypeData::parse(ty).unwrap();
        for n in 1..=6 {
            let (count, weyl) = wreath_closed_form_oracle(ty, n);
            assert_eq!(
                wreath_count_closed_form(&data, n).unwrap(),
                BigInt::from(count),
                "{ty}, n = {n}"
            );
            assert_eq!(
                wreath_weyl_data(&data, n).total_order,
                BigInt::from(weyl),
                "{ty}, n = {n}"
            );
        }
    }
}

#[test]
fn direct_route_agrees_with_closed_form() {
    let opts = LatticeOptions::default();
    for (ty, n) in [
        ("A1", 2),
        ("A1", 3),
        ("A1", 4),
        ("A2", 2),
        ("A2", 3),
        ("A3", 2),
    ] {
        let direct = wreath_count_direct(&spec(ty, n), &opts).unwrap();
        let (count, weyl) = wreath_closed_form_oracle(ty, n);
        assert_eq!(
            direct.resolution_count,
            BigInt::from(count),
            "{ty}, n = {n}"
        );
        assert_eq!(direct.weyl_order, BigInt::from(weyl), "{ty}, n = {n}");
    }
}

#[test]
fn region_count_is_divisible_by_twice_the_weyl_order() {
    for (ty, n) in [("A1", 2), ("A1", 3), ("A2", 2), ("A2", 3), ("A3", 2)] {
        let s = spec(ty, n);
        let a = catalan_arrangement(&s);
        let l = IntersectionLattice::build(&a, &LatticeOptions::default()).unwrap();
        let pi1 = l.poincare_polynomial().eval_i64(1);
        let two_w = 2 * s.ty.weyl_order;
        assert_eq!(&pi1 % &two_w, BigInt::from(0), "{ty}, n = {n}: {pi1}");
    }
}

#[test]
fn regions_equal_weyl_order_times_count() {
    let opts = LatticeOptions::default();
    for (ty, n) in [("A1", 2), ("A1", 3), ("A2", 2)] {
        let a = catalan_arrangement(&spec(ty, n));
        let (count, weyl) = wreath_closed_form_oracle(ty, n);
        assert_eq!(
            regions_by_recursion(&a),
            BigInt::from(count * weyl),
            "{ty}, n = {n}"
        );
    }
    for name in ["q8d8", "wreath:A2:2"] {
        let e = catalog(name).unwrap();
        let r = count_resolutions(&e.arrangement, &e.weyl, &opts).unwrap();
        let regions = r.arrangement.regions.expect("real arrangement").regions;
        assert_eq!(regions, &r.weyl_order * &r.resolution_count, "{name}");
    }
}

#[test]
fn catalog_counts() {
    let opts = LatticeOptions::default();
    for (name, expected) in [
        ("q8d8", 81),
        ("g4", 2),
        ("wreath:A1:2", 2),
        ("wreath:A2:2", 5),
    ] {
        let e = catalog(name).unwrap();
        let r = count_resolutions(&e.arrangement, &e.weyl, &opts).unwrap();
        assert_eq!(r.resolution_count, BigInt::from(expected), "{name}");
        assert_eq!(r.resolution_count, e.expected.count, "{name}");
    }
}

#[test]
fn group_pipeline_reproduces_catalog_weyl_orders() {
    for name in ["q8d8", "g4"] {
        let e = catalog(name).unwrap();
        let mut g = e.group().unwrap().unwrap();
        g.enumerate(DEFAULT_MAX_ORDER).unwrap();
        let a = analyze(&g).unwrap();
        let w = namikawa_weyl_from_group(&a.parabolic_classes, &e.weyl_overrides).unwrap();
        assert_eq!(w.total_order, e.weyl.total_order, "{name}");
    }
}

#[test]
fn indivisible_counts_are_reported_not_rounded() {
    // Three concurrent lines in the plane: π(1) = 6.
    let a = Arrangement::rational_central(2, &[vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
    let w = NamikawaWeylData::given(4).unwrap();
    match count_resolutions(&a, &w, &LatticeOptions::default()) {
        Err(e @ Error::Inconsistency(_)) => assert_eq!(e.exit_code(), 3),
        other => panic!("expected an inconsistency, got {other:?}"),
    }
    let ok = count_resolutions(
        &a,
        &NamikawaWeylData::given(3).unwrap(),
        &LatticeOptions::default(),
    );
    assert_eq!(ok.unwrap().resolution_count, BigInt::from(2));
}
