//! `Hom_A(C(K, A), M)` through the free-module description of the chains.
//!
//! With a unit-adapted basis, `C_n` is free over `A` on the tuples with the
//! unit at the basepoint, so an `A`-linear map is determined by its values
//! there: `Hom_A(C_n, M) ≅ Hom(A^{⊗(|K_n| − 1)}, M)`.

use super::engine::{check_truncation, fibers, DegreeBasis, FactorAlgebra};
use super::HochschildError;
use crate::algebra::{FDAlgebra, FDModule};
use crate::budget::Budget;
use crate::exactlin::{ChainComplex, Grading, Rat, RatMatrix};
use crate::simplicial::FinSimpSet;

/// Cohomologically indexed complex in degrees `0..=top`, with
/// `δ_n = (−1)^{n+1} · (− ∘ d_{n+1})`. The map leaving the top degree is
/// not built. Coordinates in degree `n` are `tuple_index · dim M + j` for
/// the tuple over the non-basepoint simplices and `M`'s basis element `j`.
pub fn cochain_complex(
    k: &FinSimpSet,
    a: &FDAlgebra,
    m: &FDModule,
    top: usize,
    budget: Budget,
) -> Result<ChainComplex, HochschildError> {
    if m.action().len() != a.dim() {
        return Err(HochschildError::ModuleMismatch {
            module: m.action().len(),
            algebra: a.dim(),
        });
    }
    check_truncation(k, top)?;
    let (a, m) = if a.is_unit_adapted() {
        (a.clone(), m.clone())
    } else {
        let (b, basis) = a.unit_adapted();
        let rebased = m.rebase(&basis);
        (b, rebased)
    };
    let alg = FactorAlgebra::from_fd(&a);
    let dm = m.dim();
    let bp = k.basepoint_chain();

    let mut remaining = budget.get();
    let mut bases = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let b = DegreeBasis::full(alg.dim, k.level_size(n) - 1, remaining, n)
            .ok()
            .filter(|b| b.len().saturating_mul(dm.max(1)) <= remaining)
            .ok_or(HochschildError::BudgetExceeded {
                degree: n,
                budget: budget.get(),
            })?;
        remaining -= b.len() * dm.max(1);
        bases.push(b);
    }
    let dims: Vec<usize> = bases.iter().map(|b| b.len() * dm).collect();

    let mut differentials = Vec::with_capacity(top + 1);
    for n in 0..top {
        let up = n + 1;
        let face_fibers: Vec<Vec<Vec<u32>>> = (0..=up)
            .map(|i| fibers(k.face_map(up, i), k.level_size(n)))
            .collect();
        let (bp_up, bp_n) = (bp[up] as usize, bp[n] as usize);
        let mut triplets: Vec<(usize, usize, Rat)> = Vec::new();
        for r in 0..bases[up].len() {
            let mut s = bases[up].tuple(r);
            s.insert(bp_up, 0);
            for (i, f) in face_fibers.iter().enumerate() {
                let sign = if (n + 1 + i) % 2 == 0 { 1 } else { -1 };
                for (mut u, c) in alg.push_forward(f, &s) {
                    let factor = u.remove(bp_n) as usize;
                    let col = bases[n].index_of(&u).expect("full basis") * dm;
                    let c = if sign > 0 { c } else { -c };
                    let rho = &m.action()[factor];
                    for j in 0..dm {
                        for (row_m, x) in rho.column(j) {
                            triplets.push((r * dm + row_m, col + j, &c * x));
                        }
                    }
                }
            }
        }
        differentials.push(RatMatrix::from_triplets(dims[up], dims[n], triplets)?);
    }
    differentials.push(RatMatrix::zeros(0, dims[top]));
    Ok(ChainComplex::new(Grading::Cohomological, dims, differentials)?)
}
