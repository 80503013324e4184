//! Tautological relations, the presentation comparison, and the curve model.

use ckverify::ckmck::build_ck;
use ckverify::rational::frac;
use ckverify::tautring::{
    abstract_hilbert, build_generators, fp_class, fp_class_with, image_hilbert, injectivity_report_with,
    symmetrized_tau_sum, tau_class, verify_relations, AbstractOptions, RelationFamily, DEFAULT_CAP,
};
use ckverify::{SpaceSpec, Status};

#[test]
fn relations_hold_up_to_three_factors() {
    for g in 1..=4 {
        for m in 1..=3 {
            let gens = build_generators(SpaceSpec::y_type(g).unwrap(), m).unwrap();
            let report = verify_relations(&gens).unwrap();
            assert!(report.all_pass(), "g={g} m={m}: {report:?}");
        }
    }
}

#[test]
fn relations_hold_on_curves() {
    for g in 1..=3 {
        let gens = build_generators(SpaceSpec::curve(g).unwrap(), 3).unwrap();
        assert!(verify_relations(&gens).unwrap().all_pass(), "g={g}");
    }
}

#[test]
fn tau_is_the_middle_projector() {
    for g in 1..=3 {
        let ck = build_ck(g).unwrap();
        assert_eq!(&tau_class(*ck.space()).unwrap(), ck.projector(2 * g - 1).unwrap().carrier());
    }
}

#[test]
fn symmetrized_sum_vanishes_and_is_sharp() {
    for g in 1..=2 {
        let space = SpaceSpec::y_type(g).unwrap();
        assert!(symmetrized_tau_sum(space, DEFAULT_CAP, None).unwrap().is_zero());
        assert!(!symmetrized_tau_sum(space, DEFAULT_CAP, Some(0)).unwrap().is_zero());
        assert!(symmetrized_tau_sum(space, 10, None).is_err());
    }
}

#[test]
fn presentation_matches_image() {
    for (g, m) in [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2)] {
        let space = SpaceSpec::y_type(g).unwrap();
        let a = abstract_hilbert(space, m, DEFAULT_CAP, &AbstractOptions::default()).unwrap();
        let b = image_hilbert(space, m, DEFAULT_CAP).unwrap();
        for (d, v) in &a {
            assert_eq!(*v, b.get(d).copied().unwrap_or(0), "g={g} m={m} d={d}");
        }
    }
}

#[test]
fn dropping_three_factor_relations_is_detected() {
    let space = SpaceSpec::y_type(2).unwrap();
    let options = AbstractOptions { omit: vec![RelationFamily::ThreeFactor] };
    let report = injectivity_report_with(space, 3, DEFAULT_CAP, &options);
    let entry = &report.entries[0];
    assert_eq!(entry.status, Status::Fail);
    // τ_ij τ_ik sits in cohomological degree 2(4g − 2)
    let first = entry.values["mismatch-degrees"].split(',').next().unwrap().trim().to_string();
    assert_eq!(first, "12");
}

#[test]
fn curve_class_is_trivial_and_coefficient_is_sharp() {
    for g in 2..=4 {
        assert!(fp_class(g).unwrap().is_zero());
        assert!(fp_class_with(g, 1, &frac(1, 2 * g as i64 - 2)).unwrap().is_zero());
        assert!(!fp_class_with(g, 0, &frac(1, 2 * g as i64)).unwrap().is_zero());
    }
    assert!(fp_class(1).is_err());
}
