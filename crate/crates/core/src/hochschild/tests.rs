use super::*;
use crate::algebra::{omega1_kernel, MultSystem};
use crate::exactlin::rat;

fn b() -> Budget {
    Budget(2_000_000)
}

fn certified(t: &HomologyTable) -> Vec<usize> {
    t.certified_dims()
}

#[test]
fn loday_identity_fold_and_inclusion() {
    let a = FDAlgebra::truncated_poly(2);
    assert_eq!(loday_map(&[0, 1], 2, &a, b()).unwrap(), RatMatrix::identity(4));
    let fold = loday_map(&[0, 0], 1, &a, b()).unwrap();
    // columns: 1⊗1, 1⊗x, x⊗1, x⊗x
    assert_eq!(fold.to_dense(), vec![vec![rat(1), rat(0), rat(0), rat(0)], vec![rat(0), rat(1), rat(1), rat(0)]]);
    let incl = loday_map(&[0], 2, &a, b()).unwrap();
    assert_eq!(incl.column(1), &[(2, rat(1))]);
}

#[test]
fn point_complex_alternates() {
    let a = FDAlgebra::truncated_poly(3);
    let c = chain_complex(&FinSimpSet::point(6), &a, 5, b()).unwrap();
    assert_eq!(c.dims(), &[3; 6]);
    for n in 1..=5 {
        let expected = if n % 2 == 0 { RatMatrix::identity(3) } else { RatMatrix::zeros(3, 3) };
        assert_eq!(c.outgoing(n), &expected);
    }
}

#[test]
fn circle_low_degrees() {
    let a = FDAlgebra::truncated_poly(2);
    let c = chain_complex(&FinSimpSet::sphere(1, 3).unwrap(), &a, 2, b()).unwrap();
    assert_eq!(c.dims(), &[2, 4, 8]);
    assert!(c.outgoing(1).is_zero());
}

#[test]
fn spheres_below_their_dimension() {
    let a = FDAlgebra::truncated_poly(2);
    let c = chain_complex(&FinSimpSet::sphere(3, 3).unwrap(), &a, 2, b()).unwrap();
    assert_eq!(c.dims(), &[2, 2, 2]);
    assert!(c.outgoing(1).is_zero());
    assert_eq!(c.outgoing(2), &RatMatrix::identity(2));
}

#[test]
fn normalized_dimensions() {
    let a = FDAlgebra::truncated_poly(3);
    let p = normalized_complex(&FinSimpSet::point(5), &a, 4, b()).unwrap();
    assert_eq!(p.dims(), &[3, 0, 0, 0, 0]);
    for d in 1..=3 {
        let s = normalized_complex(&FinSimpSet::sphere(d, d + 1).unwrap(), &a, d, b()).unwrap();
        let mut expected = vec![0; d + 1];
        expected[0] = 3;
        expected[d] = 3 * 2;
        assert_eq!(s.dims(), &expected[..], "sphere({d})");
    }
}

#[test]
fn normalized_matches_raw_and_quotient() {
    let a = FDAlgebra::truncated_poly(2);
    let k = FinSimpSet::sphere(1, 4).unwrap();
    let raw = homology(&k, &a, 3, &Options::raw(b())).unwrap();
    let norm = homology(&k, &a, 3, &Options::normalized(b())).unwrap();
    assert_eq!(raw.certified_dims(), norm.certified_dims());
    let q2 = FDAlgebra::product(&FDAlgebra::ground_field(), &FDAlgebra::ground_field());
    for (k, a) in [
        (FinSimpSet::sphere(2, 4).unwrap(), FDAlgebra::truncated_poly(2)),
        (FinSimpSet::boundary_simplex(2, 4).unwrap(), FDAlgebra::truncated_poly(2)),
        (FinSimpSet::sphere(1, 4).unwrap(), q2),
    ] {
        let direct = normalized_complex(&k, &a, 3, b()).unwrap();
        let quotient = normalized_via_quotient(&k, &a, 3, b()).unwrap();
        assert_eq!(direct.dims(), quotient.dims());
        assert_eq!(direct.homology_dims(), quotient.homology_dims());
        let raw = chain_complex(&k, &a, 3, b()).unwrap().homology_dims();
        assert_eq!(direct.homology_dims()[..3], raw[..3]);
    }
}

#[test]
fn homology_of_a_point() {
    let a = FDAlgebra::truncated_poly(3);
    let t = homology(&FinSimpSet::point(5), &a, 4, &Options::default()).unwrap();
    assert_eq!(certified(&t), vec![3, 0, 0, 0]);
}

#[test]
fn low_degree_shape_on_spheres() {
    for a in [FDAlgebra::truncated_poly(2), FDAlgebra::truncated_poly(3), FDAlgebra::split_pair()] {
        let omega = omega1_kernel(&a).module.dim();
        for d in 1..=3 {
            let k = FinSimpSet::sphere(d, d + 3).unwrap();
            let t = homology(&k, &a, d + 2, &Options::default()).unwrap();
            let mut expected = vec![0; d + 1];
            expected[0] = a.dim();
            expected[d] = omega;
            assert_eq!(&t.dims[..=d], &expected[..], "{} on sphere({d})", a.name());
        }
    }
}

#[test]
fn dual_numbers_on_the_circle() {
    let a = FDAlgebra::truncated_poly(2);
    let t = homology(&FinSimpSet::sphere(1, 5).unwrap(), &a, 4, &Options::raw(b())).unwrap();
    assert_eq!(certified(&t), vec![2, 1, 1, 1]);
    assert!(t.euler_consistent());
    assert_eq!(t.certified, vec![true, true, true, true, false]);
}

#[test]
fn graded_examples() {
    let p1 = GradedAlgebra::polynomial(1);
    let s1 = FinSimpSet::sphere(1, 5).unwrap();
    let s2 = FinSimpSet::sphere(2, 6).unwrap();
    let opts = Options::default();
    let w0 = graded_homology(&s1, &p1, 0, 4, &opts).unwrap();
    assert_eq!(certified(&w0), vec![1, 0, 0, 0]);
    let c0 = graded_chain_complex(&s1, &p1, 0, 4, b()).unwrap();
    assert_eq!(c0.dims(), &[1; 5]);
    assert_eq!(certified(&graded_homology(&s1, &p1, 1, 4, &opts).unwrap()), vec![1, 1, 0, 0]);
    assert_eq!(certified(&graded_homology(&s1, &p1, 2, 4, &opts).unwrap()), vec![1, 1, 0, 0]);
    assert_eq!(certified(&graded_homology(&s2, &p1, 1, 5, &opts).unwrap()), vec![1, 0, 1, 0, 0]);
    assert_eq!(certified(&graded_homology(&s2, &p1, 2, 5, &opts).unwrap()), vec![1, 0, 1, 0, 1]);
    let p2 = GradedAlgebra::polynomial(2);
    let t = graded_homology(&s1, &p2, 2, 3, &opts).unwrap();
    assert_eq!(t.dims[2], 1);
}

#[test]
fn graded_raw_and_normalized_agree() {
    let p1 = GradedAlgebra::polynomial(1);
    let s2 = FinSimpSet::sphere(2, 5).unwrap();
    for w in 0..=3 {
        let raw = graded_chain_complex(&s2, &p1, w, 4, b()).unwrap();
        let norm = graded_normalized_complex(&s2, &p1, w, 4, b()).unwrap();
        assert_eq!(raw.homology_dims()[..4], norm.homology_dims()[..4], "w = {w}");
    }
}

#[test]
fn graded_pieces_sum_to_finite_algebra() {
    let g = GradedAlgebra::truncated(3);
    let a = g.to_fd_algebra().unwrap();
    let k = FinSimpSet::sphere(1, 4).unwrap();
    let whole = chain_complex(&k, &a, 3, b()).unwrap();
    let max_w = 2 * k.level_size(3);
    let pieces: Vec<Vec<usize>> = (0..=max_w)
        .map(|w| graded_chain_complex(&k, &g, w, 3, b()).unwrap().homology_dims())
        .collect();
    let summed: Vec<usize> = (0..=3).map(|n| pieces.iter().map(|p| p[n]).sum()).collect();
    assert_eq!(summed, whole.homology_dims());
    assert_eq!(summed[..3], [3, 2, 2]);
}

#[test]
fn wedge_additivity() {
    let a = FDAlgebra::truncated_poly(3);
    for d in 1..=2 {
        let s = FinSimpSet::sphere(d, d + 2).unwrap();
        let w = FinSimpSet::wedge(&s, &s).unwrap();
        let t = homology(&w, &a, d + 1, &Options::default()).unwrap();
        assert_eq!(t.dims[d], 2 * 2, "d = {d}");
    }
}

#[test]
fn h0_is_the_algebra_for_connected_spaces() {
    let a = FDAlgebra::product(&FDAlgebra::ground_field(), &FDAlgebra::truncated_poly(2));
    for k in [
        FinSimpSet::sphere(1, 2).unwrap(),
        FinSimpSet::boundary_simplex(2, 2).unwrap(),
        FinSimpSet::standard_simplex(2, 2),
    ] {
        assert!(h0_witness(&k, &a, b()).unwrap(), "{}", k.name());
    }
    let two = FinSimpSet::disjoint_union(&FinSimpSet::point(2), &FinSimpSet::point(2)).unwrap();
    assert!(!h0_witness(&two, &a, b()).unwrap());
}

#[test]
fn homology_is_an_a_module() {
    let a = FDAlgebra::split_pair();
    let k = FinSimpSet::sphere(1, 4).unwrap();
    let mods = homology_modules(&k, &a, 3, b()).unwrap();
    assert_eq!(mods[0], FDModule::regular(&a).rebase(&[vec![(0, rat(1))], vec![(1, rat(1))]]));
    let loc = crate::algebra::localize(&a, &MultSystem::new(vec![(1, rat(1))])).unwrap();
    let h0 = crate::algebra::localize_module(&mods[0], &loc);
    assert_eq!(h0.dim(), 1);
    let dual = FDAlgebra::truncated_poly(2);
    let mods = homology_modules(&k, &dual, 3, b()).unwrap();
    assert_eq!(mods.iter().map(FDModule::dim).collect::<Vec<_>>(), vec![2, 1, 1]);
    // x acts by zero on the higher groups
    assert!(mods[1].action()[1].is_zero());
}

#[test]
fn budget_and_truncation_errors() {
    let a = FDAlgebra::truncated_poly(4);
    let k = FinSimpSet::sphere(3, 9).unwrap();
    assert!(matches!(
        chain_complex(&k, &a, 8, Budget(1000)),
        Err(HochschildError::BudgetExceeded { .. })
    ));
    let shallow = FinSimpSet::sphere(1, 3).unwrap();
    assert_eq!(
        chain_complex(&shallow, &a, 3, b()).unwrap_err(),
        HochschildError::TruncationTooShallow { have: 3, needed: 4 }
    );
}

#[test]
fn report_json_is_stable() {
    let a = FDAlgebra::truncated_poly(2);
    let k = FinSimpSet::sphere(1, 4).unwrap();
    let opts = Options {
        representatives: true,
        ..Options::normalized(b())
    };
    let t1 = homology(&k, &a, 3, &opts).unwrap();
    let t2 = homology(&k, &a, 3, &opts).unwrap();
    assert_eq!(t1.to_json_without_timing(), t2.to_json_without_timing());
    let v: serde_json::Value = serde_json::from_str(&t1.to_json_without_timing()).unwrap();
    let dims: Vec<usize> = serde_json::from_value(v["dims"].clone()).unwrap();
    assert_eq!(dims[..3], [2, 1, 1]);
    assert_eq!(v["certified"][3], false);
    assert_eq!(v["complex"], "normalized");
}
