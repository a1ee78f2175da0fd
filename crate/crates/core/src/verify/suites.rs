use std::time::Instant;

use crate::algebra::{
    localize, localize_module, omega1_comparison, omega1_kernel, omega1_leibniz, smooth_hodge_predicted_dim, FDAlgebra,
    FDModule, GradedAlgebra, MultSystem,
};
use crate::budget::Budget;
use crate::exactlin::{alternating_sum, rat, ChainComplex};
use crate::hochschild::{
    chain_complex, cochain_complex, graded_chain_complex, graded_homology, graded_normalized_complex, h0_witness,
    homology, homology_modules, normalized_complex, Options,
};
use crate::homalg::degeneration_check;
use crate::simplicial::{FinSimpSet, SpaceExpr};

use super::{CaseReport, SuiteReport, VerifyError};

fn certified_prefix(dims: &[usize], n: usize) -> Vec<usize> {
    dims[..n].to_vec()
}

/// For each `(A, d)`: `H_0 = A`, `H_q = 0` for `0 < q < d`, and
/// `dim H_d = dim Ω¹_A`, from normalized complexes at `N = d + 2`.
pub fn suite_low_degree(algebras: &[FDAlgebra], d_values: &[usize], budget: Budget) -> Result<SuiteReport, VerifyError> {
    let started = Instant::now();
    let opts = Options::normalized(budget);
    let mut cases = Vec::new();
    for a in algebras {
        let omega = omega1_kernel(a).module.dim();
        let leibniz = omega1_leibniz(a).dim();
        let iso = omega1_comparison(a).is_isomorphism();
        for &d in d_values {
            let t0 = Instant::now();
            let k = FinSimpSet::sphere(d, d + 3)?;
            let t = homology(&k, a, d + 2, &opts)?;
            let mut expected = vec![0; d + 1];
            expected[0] = a.dim();
            expected[d] = omega;
            let mut failures = Vec::new();
            if leibniz != omega || !iso {
                failures.push(format!("Ω¹ constructions disagree: kernel {omega}, Leibniz {leibniz}"));
            }
            if !h0_witness(&k, a, budget)? {
                failures.push("A → H_0 is not an isomorphism".into());
            }
            cases.push(CaseReport::compare(
                &[("algebra", a.name().to_string()), ("d", d.to_string()), ("N", (d + 2).to_string())],
                expected,
                t.dims[..=d].to_vec(),
                failures,
                t0,
            ));
        }
    }
    Ok(SuiteReport::new("low_degree", cases, started))
}

#[derive(Clone, Debug)]
pub struct LocalizationCase {
    pub space: SpaceExpr,
    pub algebra: FDAlgebra,
    pub s: MultSystem,
    /// Degrees `q < n` are compared.
    pub n: usize,
}

/// `dim H_q(K, A)_s = dim H_q(K, A_s)`, with `H_q(K, A)` carrying the
/// basepoint action. Disconnected spaces are refused.
pub fn suite_localization(corpus: &[LocalizationCase], budget: Budget) -> Result<SuiteReport, VerifyError> {
    let started = Instant::now();
    let opts = Options::normalized(budget);
    let mut cases = Vec::new();
    for c in corpus {
        let t0 = Instant::now();
        let k = c.space.build(c.n + 1)?;
        if !k.is_connected() {
            return Err(VerifyError::Hypothesis(format!(
                "{} is not connected, and localization commutes with higher Hochschild homology only over connected spaces",
                c.space
            )));
        }
        let loc = localize(&c.algebra, &c.s)?;
        let modules = homology_modules(&k, &c.algebra, c.n, budget)?;
        let computed: Vec<usize> = modules.iter().map(|m| localize_module(m, &loc).dim()).collect();
        let expected = if loc.is_zero() {
            vec![0; c.n]
        } else {
            certified_prefix(&homology(&k, &loc.algebra, c.n, &opts)?.dims, c.n)
        };
        let s = c.s.generator.iter().map(|(i, x)| format!("{x}·e{i}")).collect::<Vec<_>>().join("+");
        cases.push(CaseReport::compare(
            &[
                ("space", c.space.to_string()),
                ("algebra", c.algebra.name().to_string()),
                ("s", s),
                ("N", c.n.to_string()),
            ],
            expected,
            computed,
            Vec::new(),
            t0,
        ));
    }
    Ok(SuiteReport::new("localization", cases, started))
}

/// Weight pieces of `H_n(S^d, ℚ[x_1..x_m])` against the closed form, zero
/// when `d ∤ n`.
pub fn suite_smooth_hodge(
    runs: &[(usize, usize, usize, usize)],
    budget: Budget,
) -> Result<SuiteReport, VerifyError> {
    let started = Instant::now();
    let opts = Options::normalized(budget);
    let mut cases = Vec::new();
    for &(m, d, w_max, n_max) in runs {
        let g = GradedAlgebra::polynomial(m);
        let k = FinSimpSet::sphere(d, n_max + 2)?;
        for w in 0..=w_max {
            let t0 = Instant::now();
            let t = graded_homology(&k, &g, w, n_max + 1, &opts)?;
            let expected = (0..=n_max)
                .map(|n| if n % d == 0 { smooth_hodge_predicted_dim(m, d, n / d, w) } else { 0 })
                .collect();
            let failures = if t.euler_consistent() {
                Vec::new()
            } else {
                vec!["Euler characteristic of chains and homology differ".into()]
            };
            cases.push(CaseReport::compare(
                &[
                    ("m", m.to_string()),
                    ("d", d.to_string()),
                    ("weight", w.to_string()),
                    ("n_max", n_max.to_string()),
                ],
                expected,
                t.dims[..=n_max].to_vec(),
                failures,
                t0,
            ));
        }
    }
    Ok(SuiteReport::new("smooth_hodge", cases, started))
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum HomotopyType {
    Contractible,
    Sphere(usize),
    Wedge(Vec<HomotopyType>),
    Disjoint(Vec<HomotopyType>),
    Other(String),
}

fn homotopy_type(e: &SpaceExpr) -> HomotopyType {
    use HomotopyType as H;
    match e {
        SpaceExpr::Point | SpaceExpr::Simplex(_) => H::Contractible,
        SpaceExpr::Sphere(d) => H::Sphere(*d),
        SpaceExpr::Boundary(d) if *d >= 1 => H::Sphere(d - 1),
        SpaceExpr::Skeleton(inner, n) if **inner == SpaceExpr::Simplex(n + 1) => H::Sphere(*n),
        SpaceExpr::Wedge(a, b) => {
            let mut parts = Vec::new();
            for p in [homotopy_type(a), homotopy_type(b)] {
                match p {
                    H::Contractible => {}
                    H::Wedge(inner) => parts.extend(inner),
                    other => parts.push(other),
                }
            }
            parts.sort();
            match parts.len() {
                0 => H::Contractible,
                1 => parts.pop().expect("one part"),
                _ => H::Wedge(parts),
            }
        }
        SpaceExpr::Disjoint(a, b) => {
            let mut parts = Vec::new();
            for p in [homotopy_type(a), homotopy_type(b)] {
                match p {
                    H::Disjoint(inner) => parts.extend(inner),
                    other => parts.push(other),
                }
            }
            parts.sort();
            H::Disjoint(parts)
        }
        other => H::Other(other.to_string()),
    }
}

/// Whether the two expressions are related by the registered weak
/// equivalences: simplices and points are contractible, `∂Δ^{d+1}` and the
/// `d`-skeleton of `Δ^{d+1}` model `S^d`, and contractible wedge summands
/// drop out.
pub fn registered_equivalence(a: &SpaceExpr, b: &SpaceExpr) -> bool {
    fn opaque(h: &HomotopyType) -> bool {
        match h {
            HomotopyType::Other(_) => true,
            HomotopyType::Wedge(parts) | HomotopyType::Disjoint(parts) => parts.iter().any(opaque),
            _ => false,
        }
    }
    let (x, y) = (homotopy_type(a), homotopy_type(b));
    x == y && !opaque(&x)
}

/// Degreewise equal homology dims for `q < n` on weakly equivalent models.
pub fn suite_homotopy_invariance(
    pairs: &[(SpaceExpr, SpaceExpr)],
    algebras: &[FDAlgebra],
    n: usize,
    budget: Budget,
) -> Result<SuiteReport, VerifyError> {
    let started = Instant::now();
    let opts = Options::normalized(budget);
    let mut cases = Vec::new();
    for (e1, e2) in pairs {
        if !registered_equivalence(e1, e2) {
            return Err(VerifyError::Hypothesis(format!(
                "{e1} and {e2} are not a registered weakly equivalent pair"
            )));
        }
        let (k1, k2) = (e1.build(n + 1)?, e2.build(n + 1)?);
        for a in algebras {
            let t0 = Instant::now();
            let h1 = homology(&k1, a, n, &opts)?;
            let h2 = homology(&k2, a, n, &opts)?;
            cases.push(CaseReport::compare(
                &[
                    ("space", e1.to_string()),
                    ("model", e2.to_string()),
                    ("algebra", a.name().to_string()),
                    ("N", n.to_string()),
                ],
                certified_prefix(&h1.dims, n),
                certified_prefix(&h2.dims, n),
                Vec::new(),
                t0,
            ));
        }
    }
    Ok(SuiteReport::new("homotopy_invariance", cases, started))
}

#[derive(Clone, Debug)]
pub struct HodgeCohomologyCase {
    pub d: usize,
    pub algebra: FDAlgebra,
    pub module: FDModule,
    pub module_label: String,
    pub n_max: usize,
}

/// `H^n(S^d, A, M)` against the total dimensions of
/// `Ext^p_A(H_q(S^d, A), M)`. For semisimple `A` the positive Ext columns
/// vanish and the groups must sit in degrees divisible by `d`.
pub fn suite_hodge_cohomology(corpus: &[HodgeCohomologyCase], budget: Budget) -> Result<SuiteReport, VerifyError> {
    let started = Instant::now();
    let mut cases = Vec::new();
    for c in corpus {
        let t0 = Instant::now();
        let k = FinSimpSet::sphere(c.d, c.n_max + 2)?;
        let r = degeneration_check(&k, &c.algebra, &c.module, c.n_max, c.n_max, budget)?;
        let mut failures = Vec::new();
        if !r.lhs_le_rhs {
            failures.push("H^n exceeds the E_2 total".into());
        }
        for (n, eq) in r.equal.iter().enumerate() {
            if !eq {
                failures.push(format!("degree {n}: H^n = {} but E_2 total = {}", r.lhs[n], r.rhs[n]));
            }
        }
        if c.algebra.is_semisimple() {
            let modules = homology_modules(&k, &c.algebra, c.n_max + 1, budget)?;
            let shape: Vec<usize> = (0..=c.n_max)
                .map(|n| if n % c.d == 0 { modules[n].hom_dim(&c.module) } else { 0 })
                .collect();
            if shape != r.lhs {
                failures.push(format!("Hodge shape {shape:?} differs from H^n"));
            }
        }
        cases.push(CaseReport::compare(
            &[
                ("d", c.d.to_string()),
                ("algebra", c.algebra.name().to_string()),
                ("module", c.module_label.clone()),
                ("n_max", c.n_max.to_string()),
            ],
            r.rhs,
            r.lhs,
            failures,
            t0,
        ));
    }
    Ok(SuiteReport::new("hodge_cohomology", cases, started))
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `d∘d = 0` on generated complexes, simplicial identities on every
/// constructor, sphere level counts `1 + C(n, d)`, and Euler
/// characteristics of graded complexes.
pub fn suite_structural(budget: Budget) -> Result<SuiteReport, VerifyError> {
    let started = Instant::now();
    let mut cases = Vec::new();
    let trunc = 6;

    let exprs = [
        "point",
        "simplex(1)",
        "simplex(2)",
        "simplex(3)",
        "boundary(2)",
        "boundary(3)",
        "sphere(1)",
        "sphere(2)",
        "sphere(3)",
        "wedge(sphere(1),sphere(1))",
        "wedge(sphere(1),sphere(2))",
        "disjoint(point,point)",
        "skeleton(simplex(3),1)",
    ];
    for src in exprs {
        let t0 = Instant::now();
        let e: SpaceExpr = src.parse()?;
        let k = e.build(trunc)?;
        let failures = match k.validate() {
            Ok(()) => Vec::new(),
            Err(v) => vec![format!("{v:?}")],
        };
        cases.push(CaseReport::compare(
            &[("check", "simplicial identities".into()), ("space", src.into())],
            Vec::new(),
            Vec::new(),
            failures,
            t0,
        ));
    }

    for d in 1..=3 {
        let t0 = Instant::now();
        let k = FinSimpSet::sphere(d, trunc)?;
        cases.push(CaseReport::compare(
            &[("check", "level sizes".into()), ("space", format!("sphere({d})"))],
            (0..=trunc).map(|n| 1 + binomial(n, d)).collect(),
            k.level_sizes(),
            Vec::new(),
            t0,
        ));
    }

    let dual = FDAlgebra::truncated_poly(2);
    let cubic = FDAlgebra::truncated_poly(3);
    let split = FDAlgebra::split_pair();
    let mut complexes: Vec<(String, ChainComplex)> = Vec::new();
    for (src, a, top) in [
        ("sphere(1)", &dual, 4),
        ("sphere(2)", &dual, 4),
        ("boundary(2)", &dual, 3),
        ("sphere(1)", &cubic, 3),
        ("wedge(sphere(1),sphere(1))", &split, 3),
    ] {
        let k = src.parse::<SpaceExpr>()?.build(top + 1)?;
        complexes.push((format!("raw {src} {}", a.name()), chain_complex(&k, a, top, budget)?));
        complexes.push((format!("normalized {src} {}", a.name()), normalized_complex(&k, a, top, budget)?));
        let m = FDModule::augmentation(a).unwrap_or_else(|_| FDModule::regular(a));
        complexes.push((format!("cochain {src} {}", a.name()), cochain_complex(&k, a, &m, top, budget)?));
    }
    let graded_runs = [(1, 1, 3, 3), (1, 2, 3, 5), (2, 1, 2, 3)];
    for &(m, d, w_max, n_max) in &graded_runs {
        let g = GradedAlgebra::polynomial(m);
        let k = FinSimpSet::sphere(d, n_max + 2)?;
        for w in 0..=w_max {
            let label = format!("sphere({d}) {} weight {w}", g.name());
            complexes.push((format!("graded raw {label}"), graded_chain_complex(&k, &g, w, n_max.min(3), budget)?));
            complexes.push((format!("graded normalized {label}"), graded_normalized_complex(&k, &g, w, n_max + 1, budget)?));
        }
    }
    for (label, c) in &complexes {
        let t0 = Instant::now();
        let mut failures = Vec::new();
        if let Err(e) = c.check_square_zero() {
            failures.push(e.to_string());
        }
        let chi_c = alternating_sum(c.dims());
        let chi_h = alternating_sum(&c.homology_dims());
        if chi_c != chi_h {
            failures.push(format!("Euler characteristic {chi_c} on chains but {chi_h} on homology"));
        }
        cases.push(CaseReport::compare(
            &[("check", "d∘d = 0 and Euler characteristic".into()), ("complex", label.clone())],
            Vec::new(),
            Vec::new(),
            failures,
            t0,
        ));
    }
    Ok(SuiteReport::new("structural", cases, started))
}

pub(super) fn run_default(name: &str, budget: Budget) -> Result<SuiteReport, VerifyError> {
    let split = FDAlgebra::split_pair();
    let dual = FDAlgebra::truncated_poly(2);
    let x = MultSystem::new(vec![(1, rat(1))]);
    let parse = |s: &str| s.parse::<SpaceExpr>().map_err(VerifyError::from);
    match name {
        "low_degree" => suite_low_degree(
            &[
                FDAlgebra::ground_field(),
                dual.clone(),
                FDAlgebra::truncated_poly(3),
                split.clone(),
            ],
            &[1, 2, 3],
            budget,
        ),
        "localization" => {
            let corpus = ["sphere(1)", "sphere(2)", "wedge(sphere(1),sphere(1))"]
                .into_iter()
                .map(|s| {
                    Ok(LocalizationCase {
                        space: parse(s)?,
                        algebra: split.clone(),
                        s: x.clone(),
                        n: 4,
                    })
                })
                .collect::<Result<Vec<_>, VerifyError>>()?;
            suite_localization(&corpus, budget)
        }
        "smooth_hodge" => suite_smooth_hodge(&[(1, 1, 3, 3), (1, 2, 3, 5), (2, 1, 2, 3)], budget),
        "homotopy_invariance" => {
            let pairs = [
                ("point", "simplex(1)"),
                ("point", "simplex(2)"),
                ("sphere(1)", "boundary(2)"),
                ("sphere(1)", "skeleton(simplex(2),1)"),
                ("sphere(2)", "boundary(3)"),
                ("wedge(sphere(1),point)", "sphere(1)"),
            ]
            .into_iter()
            .map(|(a, b)| Ok((parse(a)?, parse(b)?)))
            .collect::<Result<Vec<_>, VerifyError>>()?;
            suite_homotopy_invariance(&pairs, &[dual, FDAlgebra::truncated_poly(3)], 4, budget)
        }
        "hodge_cohomology" => {
            let q2 = FDAlgebra::product(&FDAlgebra::ground_field(), &FDAlgebra::ground_field());
            let q = FDAlgebra::ground_field();
            let corpus = vec![
                HodgeCohomologyCase {
                    d: 2,
                    module: FDModule::regular(&q2),
                    algebra: q2,
                    module_label: "regular".into(),
                    n_max: 4,
                },
                HodgeCohomologyCase {
                    d: 1,
                    module: FDModule::augmentation(&dual)?,
                    algebra: dual,
                    module_label: "augmentation".into(),
                    n_max: 3,
                },
                HodgeCohomologyCase {
                    d: 3,
                    module: FDModule::regular(&q),
                    algebra: q,
                    module_label: "regular".into(),
                    n_max: 3,
                },
            ];
            suite_hodge_cohomology(&corpus, budget)
        }
        "structural" => suite_structural(budget),
        other => Err(VerifyError::UnknownSuite(other.to_string())),
    }
}
