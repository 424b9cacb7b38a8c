//! Discriminant stratification of `y^2 = x^3 + ax + b` against exact fiber
//! classification, and collision scans along one-parameter families.

use proptest::prelude::*;
use severi_core::exec::Exec;
use severi_core::hyperelliptic::*;
use severi_core::poly::factor;
use severi_core::rational::{frac, q};
use severi_core::UniPoly;

fn grid() -> Vec<severi_core::Q> {
    rational_grid(&q(-5), &q(5), 41)
}

#[test]
fn cubic_grid_labels_agree() {
    let report = cubic_grid_agreement(&grid(), Exec::Parallel).unwrap();
    assert_eq!(report.points, 41 * 41);
    assert!(report.disagreements.is_empty(), "{:?}", report.disagreements);
    assert_eq!(report.cusp, 1);
    assert!(report.one_node > 0);
}

#[test]
fn discriminant_vanishes_exactly_on_repeated_roots() {
    for a in grid() {
        for b in grid() {
            let p = versal_cubic(&a, &b);
            let g = p.poly().gcd(&p.poly().derivative());
            assert_eq!(cubic_discriminant(&a, &b) == q(0), g.degree().unwrap_or(0) >= 1, "a = {a}, b = {b}");
        }
    }
}

#[test]
fn discriminant_curve_is_nodal_away_from_the_origin() {
    let ts: Vec<_> = (-20..=20).map(|k| frac(k, 4)).collect();
    let samples = scan_discriminant(&ts, Exec::Parallel).unwrap();
    for s in samples {
        let fiber = cubic_label_from_fiber(&s.a, &s.b).unwrap();
        assert_eq!(fiber, s.label);
    }
}

#[test]
fn collision_of_nodes_into_a_cusp() {
    let spec = FamilySpec { coeffs: vec!["2s^3".into(), "-3s^2".into(), "0".into(), "1".into()] };
    let family = Family::from_spec(&spec).unwrap();
    let samples: Vec<_> = vec![q(1), frac(1, 2), frac(1, 4), q(0)];
    let report = equigeneric_path_check(&family, &samples, Exec::Sequential).unwrap();
    assert!(report.equigeneric);
    assert!(report.samples.iter().all(|s| s.delta == 1));
    assert_eq!(report.transitions.len(), 1);
    assert_eq!(report.transitions[0].from_profile, "A1");
    assert_eq!(report.transitions[0].to_profile, "A2");
}

#[test]
fn semicontinuity_on_corpus_families() {
    let families: Vec<Vec<&str>> = vec![
        vec!["2s^3", "-3s^2", "0", "1"],
        vec!["s^2", "0", "-2s", "0", "1"],
        // (x - s)^2 x^2: two nodes merging into A3
        vec!["0", "0", "s^2", "-2s", "1"],
        // x^3 + s x: smooth fibers degenerating to a cusp, δ jumps
        vec!["0", "s", "0", "1"],
    ];
    let samples = vec![q(2), q(1), frac(1, 3), q(0)];
    for coeffs in families {
        let spec = FamilySpec { coeffs: coeffs.iter().map(|c| c.to_string()).collect() };
        let report = equigeneric_path_check(&Family::from_spec(&spec).unwrap(), &samples, Exec::Sequential).unwrap();
        for t in &report.transitions {
            assert!(t.delta_semicontinuous, "{coeffs:?}: {t:?}");
        }
    }
}

fn squarefree_coprime(p: &UniPoly, q: &UniPoly) -> bool {
    let pq = p * q;
    pq.gcd(&pq.derivative()).is_constant()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn doubled_factors_are_nodes(
        roots_p in prop::collection::btree_set(-6i64..=6, 1..3),
        roots_q in prop::collection::btree_set(-6i64..=6, 0..3),
        shift in 1i64..=3,
    ) {
        // p has rational roots, q = (x^2 + shift) times linear factors
        let p = roots_p.iter().fold(UniPoly::one(), |acc, &r| &acc * &UniPoly::from_ints(&[-r, 1]));
        let q = roots_q.iter().fold(UniPoly::from_ints(&[shift, 0, 1]), |acc, &r| &acc * &UniPoly::from_ints(&[-r, 1]));
        prop_assume!(squarefree_coprime(&p, &q));
        let f = MonicUnivariate::new(&(&p * &p) * &q).unwrap();
        let fiber = classify_fiber(&f).unwrap();
        prop_assert_eq!(fiber.multiplicity_profile.len(), 1);
        prop_assert_eq!(fiber.multiplicity_profile[0].multiplicity, 2);
        prop_assert_eq!(fiber.multiplicity_profile[0].count, roots_p.len());
        let mut expected = factor::rational_roots(&p);
        expected.sort();
        let mut found: Vec<_> = fiber.singular_points.iter().map(|s| match &s.location {
            RootLocation::Rational(r) => r.clone(),
            other => panic!("irrational root {other:?}"),
        }).collect();
        found.sort();
        prop_assert_eq!(found, expected);
    }
}
