use super::*;
use crate::algebra::{FDAlgebra, FDModule, MultSystem};
use crate::exactlin::rat;
use crate::simplicial::SpaceExpr;

fn b() -> Budget {
    Budget(2_000_000)
}

fn expr(s: &str) -> SpaceExpr {
    s.parse().unwrap()
}

#[test]
fn low_degree_examples() {
    let r = suite_low_degree(&[FDAlgebra::ground_field()], &[2], b()).unwrap();
    assert!(r.passed());
    assert_eq!(r.cases[0].computed, vec![1, 0, 0]);
    let r = suite_low_degree(&[FDAlgebra::truncated_poly(2)], &[3], b()).unwrap();
    assert_eq!(r.cases[0].computed, vec![2, 0, 0, 1]);
    let q2 = FDAlgebra::product(&FDAlgebra::ground_field(), &FDAlgebra::ground_field());
    let r = suite_low_degree(&[q2], &[2], b()).unwrap();
    assert!(r.passed());
    assert_eq!(r.cases[0].computed[2], 0);
}

#[test]
fn localization_examples() {
    let split = FDAlgebra::split_pair();
    let case = |space: &str, s: Vec<(usize, Rat)>| LocalizationCase {
        space: expr(space),
        algebra: split.clone(),
        s: MultSystem::new(s),
        n: 3,
    };
    let r = suite_localization(&[case("sphere(1)", vec![(1, rat(1))]), case("sphere(2)", vec![(1, rat(1))])], b()).unwrap();
    assert!(r.passed(), "{}", r.to_text());
    assert_eq!(r.cases[0].computed, vec![1, 0, 0]);
    // localizing at the unit changes nothing
    let r = suite_localization(&[case("sphere(1)", vec![(0, rat(1))])], b()).unwrap();
    assert_eq!(r.cases[0].computed, vec![2, 0, 0]);
    assert!(r.passed());
    let err = suite_localization(&[case("disjoint(point,point)", vec![(1, rat(1))])], b()).unwrap_err();
    assert!(matches!(err, VerifyError::Hypothesis(ref m) if m.contains("connected")));
}

use crate::exactlin::Rat;

#[test]
fn smooth_hodge_examples() {
    let r = suite_smooth_hodge(&[(1, 1, 3, 2), (1, 2, 3, 4), (2, 1, 2, 2)], b()).unwrap();
    assert!(r.passed(), "{}", r.to_text());
    let find = |m: &str, d: &str, w: &str| {
        r.cases
            .iter()
            .find(|c| c.inputs["m"] == m && c.inputs["d"] == d && c.inputs["weight"] == w)
            .unwrap()
            .computed
            .clone()
    };
    assert_eq!(find("1", "1", "2"), vec![1, 1, 0]);
    assert_eq!(find("1", "2", "1"), vec![1, 0, 1, 0, 0]);
    assert_eq!(find("1", "2", "3"), vec![1, 0, 1, 0, 1]);
    assert_eq!(find("2", "1", "2")[2], 1);
}

#[test]
fn homotopy_examples() {
    let pairs = [(expr("point"), expr("simplex(2)")), (expr("sphere(1)"), expr("boundary(2)")), (expr("sphere(1)"), expr("sphere(1)"))];
    let r = suite_homotopy_invariance(&pairs, &[FDAlgebra::truncated_poly(2)], 3, b()).unwrap();
    assert!(r.passed());
    assert_eq!(r.cases[1].computed, vec![2, 1, 1]);
    let bad = [(expr("sphere(1)"), expr("sphere(2)"))];
    assert!(matches!(
        suite_homotopy_invariance(&bad, &[FDAlgebra::ground_field()], 2, b()),
        Err(VerifyError::Hypothesis(_))
    ));
}

#[test]
fn registered_pairs() {
    assert!(registered_equivalence(&expr("wedge(sphere(1),simplex(2))"), &expr("boundary(2)")));
    assert!(registered_equivalence(&expr("skeleton(simplex(3),2)"), &expr("sphere(2)")));
    assert!(registered_equivalence(
        &expr("wedge(sphere(2),sphere(1))"),
        &expr("wedge(boundary(2),boundary(3))")
    ));
    assert!(!registered_equivalence(&expr("skeleton(simplex(3),1)"), &expr("sphere(1)")));
    assert!(!registered_equivalence(&expr("point"), &expr("disjoint(point,point)")));
}

#[test]
fn hodge_cohomology_examples() {
    let q2 = FDAlgebra::product(&FDAlgebra::ground_field(), &FDAlgebra::ground_field());
    let q = FDAlgebra::ground_field();
    let corpus = [
        HodgeCohomologyCase {
            d: 2,
            module: FDModule::regular(&q2),
            algebra: q2,
            module_label: "regular".into(),
            n_max: 4,
        },
        HodgeCohomologyCase {
            d: 3,
            module: FDModule::regular(&q),
            algebra: q,
            module_label: "regular".into(),
            n_max: 3,
        },
    ];
    let r = suite_hodge_cohomology(&corpus, b()).unwrap();
    assert!(r.passed(), "{}", r.to_text());
    assert_eq!(r.cases[0].computed, vec![2, 0, 0, 0, 0]);
    assert_eq!(r.cases[1].computed, vec![1, 0, 0, 0]);
}

#[test]
fn dual_numbers_fail_degeneration() {
    let dual = FDAlgebra::truncated_poly(2);
    let corpus = [HodgeCohomologyCase {
        d: 1,
        module: FDModule::augmentation(&dual).unwrap(),
        algebra: dual,
        module_label: "augmentation".into(),
        n_max: 3,
    }];
    let r = suite_hodge_cohomology(&corpus, b()).unwrap();
    assert!(!r.passed());
    assert_eq!(r.cases[0].computed, vec![1, 1, 1, 1]);
    assert_eq!(r.cases[0].expected, vec![1, 1, 2, 3]);
}

#[test]
fn structural_suite_passes() {
    let r = suite_structural(b()).unwrap();
    assert!(r.passed(), "{}", r.to_text());
}

#[test]
fn reports_are_stable_and_dispatch() {
    let r1 = run_suite("low_degree", "default", b()).unwrap();
    let r2 = run_suite("low_degree", "default", b()).unwrap();
    assert!(r1.passed());
    assert_eq!(r1.to_json_without_timing(), r2.to_json_without_timing());
    assert_eq!(r1.cases.len(), 12);
    assert!(matches!(run_suite("nope", "default", b()), Err(VerifyError::UnknownSuite(_))));
    assert!(matches!(run_suite("low_degree", "big", b()), Err(VerifyError::UnknownCorpus(_))));
}
