//! Higher Hochschild complexes `C(K, A)` and their (co)homology.
//!
//! `C_n(K, A) = A^{⊗K_n}` with `d_n = Σ (−1)^i (d_i)_*`, where a map of
//! finite sets acts on tensors by multiplying factors along fibres. Three
//! flavours share one engine: the raw complex, the normalized one (the
//! quotient by degeneracy images, which in a basis starting with `1` is
//! spanned by the tuples whose non-unit positions all lie in one `s_i`
//! image), and weight-`w` pieces over graded algebras.

mod cochains;
mod engine;
mod table;

use std::time::Instant;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{AlgebraError, FDAlgebra, FDModule, GradedAlgebra};
use crate::budget::Budget;
use crate::exactlin::{
    image_basis, quotient_complex, ChainComplex, Echelon, LinalgError, Rat, RatMatrix, SparseAccumulator,
    SpanSolver, Subspace,
};
use crate::simplicial::FinSimpSet;

pub use cochains::cochain_complex;
use engine::{build_chain_complex, fibers, BuiltComplex, DegreeBasis, FactorAlgebra, Selection};
pub use table::{ComplexKind, HomologyTable};
use table::TableLabels;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HochschildError {
    #[error("degree {degree} needs more than the size budget of {budget} basis elements")]
    BudgetExceeded { degree: usize, budget: usize },
    #[error("space is truncated at level {have} but level {needed} is required")]
    TruncationTooShallow { have: usize, needed: usize },
    #[error("normalized complexes are limited to degree 64, asked for {0}")]
    LevelTooHigh(usize),
    #[error("module has {module} action matrices but the algebra has dimension {algebra}")]
    ModuleMismatch { module: usize, algebra: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Knobs shared by the homology entry points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub budget: Budget,
    pub normalized: bool,
    pub representatives: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            budget: Budget::default(),
            normalized: true,
            representatives: false,
        }
    }
}

impl Options {
    pub fn raw(budget: Budget) -> Self {
        Options {
            budget,
            normalized: false,
            representatives: false,
        }
    }

    pub fn normalized(budget: Budget) -> Self {
        Options {
            budget,
            normalized: true,
            representatives: false,
        }
    }
}

/// Matrix of `f_* : A^{⊗domain} → A^{⊗codomain}` in lexicographic tensor
/// bases, for `f` given as the list of images.
pub fn loday_map(f: &[u32], codomain: usize, a: &FDAlgebra, budget: Budget) -> Result<RatMatrix, HochschildError> {
    if let Some(y) = f.iter().find(|y| **y as usize >= codomain) {
        return Err(LinalgError::Shape(format!("image {y} outside a codomain of size {codomain}")).into());
    }
    let source = DegreeBasis::full(a.dim(), f.len(), budget.get(), 0)?;
    let target = DegreeBasis::full(a.dim(), codomain, budget.get(), 0)?;
    let alg = FactorAlgebra::from_fd(a);
    let fib = fibers(f, codomain);
    let columns = (0..source.len())
        .map(|c| {
            alg.push_forward(&fib, &source.tuple(c))
                .into_iter()
                .map(|(u, x)| (target.index_of(&u).expect("full basis"), x))
                .collect()
        })
        .collect();
    Ok(RatMatrix::from_columns(target.len(), columns)?)
}

fn fd_factor(a: &FDAlgebra, normalized: bool) -> FactorAlgebra {
    if normalized && !a.is_unit_adapted() {
        FactorAlgebra::from_fd(&a.unit_adapted().0)
    } else {
        FactorAlgebra::from_fd(a)
    }
}

fn build_fd(k: &FinSimpSet, a: &FDAlgebra, top: usize, normalized: bool, budget: Budget) -> Result<BuiltComplex, HochschildError> {
    build_chain_complex(
        k,
        fd_factor(a, normalized),
        top,
        Selection {
            normalized,
            weight: None,
        },
        budget,
    )
}

/// The raw complex `C(K, A)` in degrees `0..=top`; needs `K` truncated at
/// level `top + 1` or higher.
pub fn chain_complex(k: &FinSimpSet, a: &FDAlgebra, top: usize, budget: Budget) -> Result<ChainComplex, HochschildError> {
    Ok(build_fd(k, a, top, false, budget)?.complex)
}

/// The normalized complex, built directly in a unit-adapted basis.
pub fn normalized_complex(k: &FinSimpSet, a: &FDAlgebra, top: usize, budget: Budget) -> Result<ChainComplex, HochschildError> {
    Ok(build_fd(k, a, top, true, budget)?.complex)
}

/// The normalized complex computed the slow way: the raw complex modulo the
/// span of all degeneracy images, in the algebra's own basis.
pub fn normalized_via_quotient(k: &FinSimpSet, a: &FDAlgebra, top: usize, budget: Budget) -> Result<ChainComplex, HochschildError> {
    let raw = chain_complex(k, a, top, budget)?;
    let alg = FactorAlgebra::from_fd(a);
    let mut degenerate = vec![Subspace::zero(raw.dims()[0])];
    for n in 1..=top {
        let source = DegreeBasis::full(a.dim(), k.level_size(n - 1), budget.get(), n)?;
        let target = DegreeBasis::full(a.dim(), k.level_size(n), budget.get(), n)?;
        let images = (0..n).flat_map(|i| {
            let fib = fibers(k.degeneracy_map(n - 1, i), k.level_size(n));
            let (alg, source, target) = (&alg, &source, &target);
            (0..source.len()).map(move |c| {
                let mut acc = SparseAccumulator::new();
                for (u, x) in alg.push_forward(&fib, &source.tuple(c)) {
                    acc.add(target.index_of(&u).expect("full basis"), x);
                }
                acc.finish()
            })
        });
        degenerate.push(Subspace::spanned_by(target.len(), images));
    }
    Ok(quotient_complex(&raw, &degenerate)?)
}

fn build_graded(
    k: &FinSimpSet,
    g: &GradedAlgebra,
    w: usize,
    top: usize,
    normalized: bool,
    budget: Budget,
) -> Result<BuiltComplex, HochschildError> {
    let (alg, _) = FactorAlgebra::truncated_graded(g, w);
    build_chain_complex(
        k,
        alg,
        top,
        Selection {
            normalized,
            weight: Some(w),
        },
        budget,
    )
}

/// The weight-`w` summand of `C(K, g)`: tuples of standard monomials of
/// total weight `w`.
pub fn graded_chain_complex(k: &FinSimpSet, g: &GradedAlgebra, w: usize, top: usize, budget: Budget) -> Result<ChainComplex, HochschildError> {
    Ok(build_graded(k, g, w, top, false, budget)?.complex)
}

/// The weight-`w` summand of the normalized complex.
pub fn graded_normalized_complex(
    k: &FinSimpSet,
    g: &GradedAlgebra,
    w: usize,
    top: usize,
    budget: Budget,
) -> Result<ChainComplex, HochschildError> {
    Ok(build_graded(k, g, w, top, true, budget)?.complex)
}

fn kind(normalized: bool) -> ComplexKind {
    if normalized {
        ComplexKind::Normalized
    } else {
        ComplexKind::Raw
    }
}

/// `H_n(K, A)` for `n ≤ top`; degree `top` is flagged uncertified.
pub fn homology(k: &FinSimpSet, a: &FDAlgebra, top: usize, opts: &Options) -> Result<HomologyTable, HochschildError> {
    let started = Instant::now();
    let c = build_fd(k, a, top, opts.normalized, opts.budget)?.complex;
    let labels = TableLabels {
        space: k.name().to_string(),
        algebra: a.name().to_string(),
        coefficients: None,
        kind: kind(opts.normalized),
        truncation: k.trunc_level(),
        weight: None,
    };
    Ok(HomologyTable::from_complex(&c, labels, opts.representatives, started)?)
}

/// Weight-`w` piece of `H_n(K, g)` for `n ≤ top`.
pub fn graded_homology(
    k: &FinSimpSet,
    g: &GradedAlgebra,
    w: usize,
    top: usize,
    opts: &Options,
) -> Result<HomologyTable, HochschildError> {
    let started = Instant::now();
    let c = build_graded(k, g, w, top, opts.normalized, opts.budget)?.complex;
    let labels = TableLabels {
        space: k.name().to_string(),
        algebra: g.name().to_string(),
        coefficients: None,
        kind: kind(opts.normalized),
        truncation: k.trunc_level(),
        weight: Some(w),
    };
    Ok(HomologyTable::from_complex(&c, labels, opts.representatives, started)?)
}

/// `H^n(K, A, M)` for `n ≤ top`; degree `top` is flagged uncertified.
pub fn cohomology(
    k: &FinSimpSet,
    a: &FDAlgebra,
    m: &FDModule,
    coefficients: &str,
    top: usize,
    opts: &Options,
) -> Result<HomologyTable, HochschildError> {
    let started = Instant::now();
    let c = cochain_complex(k, a, m, top, opts.budget)?;
    let labels = TableLabels {
        space: k.name().to_string(),
        algebra: a.name().to_string(),
        coefficients: Some(coefficients.to_string()),
        kind: ComplexKind::Cochain,
        truncation: k.trunc_level(),
        weight: None,
    };
    Ok(HomologyTable::from_complex(&c, labels, opts.representatives, started)?)
}

/// `H_q(K, A)` as `A`-modules for `q < top`, with `A` acting on the
/// basepoint factor.
pub fn homology_modules(k: &FinSimpSet, a: &FDAlgebra, top: usize, budget: Budget) -> Result<Vec<FDModule>, HochschildError> {
    let (adapted, change) = a.unit_adapted();
    let built = build_fd(k, &adapted, top, true, budget)?;
    let c = &built.complex;
    let bp = k.basepoint_chain();
    // original basis vectors in the adapted basis
    let back = SpanSolver::new(a.dim(), &change);
    let old_in_new: Vec<Vec<(usize, Rat)>> = (0..a.dim())
        .map(|i| {
            back.solve(&[(i, Rat::one())])
                .expect("change of basis is invertible")
                .into_iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .collect()
        })
        .collect();
    let mut modules = Vec::with_capacity(top);
    for q in 0..top {
        let (h, reps) = c.homology_with_representatives(q)?;
        let boundaries = image_basis(c.incoming(q).expect("q < top"));
        let solver = SpanSolver::new(c.dims()[q], &[boundaries.basis(), &reps[..]].concat());
        let nb = boundaries.dim();
        let adapted_action: Vec<RatMatrix> = (0..adapted.dim())
            .map(|i| {
                let p = built.basepoint_action(bp[q] as usize, q, i as u32);
                let cols = reps
                    .iter()
                    .map(|r| {
                        let coords = solver.solve(&p.apply(r)).expect("action preserves cycles");
                        coords
                            .into_iter()
                            .enumerate()
                            .skip(nb)
                            .filter(|(_, x)| !x.is_zero())
                            .map(|(j, x)| (j - nb, x))
                            .collect()
                    })
                    .collect();
                RatMatrix::from_columns(h, cols).expect("coordinates in range")
            })
            .collect();
        let m = FDModule::new(&adapted, h, adapted_action)?;
        let action = old_in_new.iter().map(|v| m.action_of(v)).collect();
        modules.push(FDModule::new(a, h, action)?);
    }
    Ok(modules)
}

/// Checks that `a ↦ a ⊗ 1 ⊗ … ⊗ 1` (basepoint factor) induces
/// `A ≅ H_0(K, A)`, using multiplication of all factors as the inverse.
/// Holds exactly when `K` is connected.
pub fn h0_witness(k: &FinSimpSet, a: &FDAlgebra, budget: Budget) -> Result<bool, HochschildError> {
    let c = chain_complex(k, a, 1, budget)?;
    let width = k.level_size(0);
    let all: Vec<u32> = vec![0; width];
    let mu = loday_map(&all, 1, a, budget)?;
    if !mu.mul(c.incoming(0).expect("degree 1 is built")).is_zero() {
        return Ok(false);
    }
    let bp = k.basepoint();
    let incl_map: Vec<u32> = vec![bp as u32];
    let iota = loday_map(&incl_map, width, a, budget)?;
    if mu.mul(&iota) != RatMatrix::identity(a.dim()) {
        return Ok(false);
    }
    let mut e = Echelon::new(c.dims()[0]);
    for v in image_basis(c.incoming(0).expect("degree 1 is built")).basis() {
        e.insert_rat(v);
    }
    let before = e.rank();
    for col in iota.columns() {
        e.insert_rat(col);
    }
    Ok(e.rank() - before == a.dim() && c.homology_dim(0) == a.dim())
}

#[cfg(test)]
mod tests;
