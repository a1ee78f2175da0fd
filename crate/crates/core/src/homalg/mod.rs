//! Minimal free resolutions and Ext over finite-dimensional commutative
//! algebras, and the comparison of `H^*(K, A, M)` with its `E_2` page.
//!
//! Free modules `A^r` use coordinates `k·dim A + i` for `e_i` in summand `k`.
//! Each step picks generators of the current kernel modulo `rad·kernel`
//! (Nakayama), where `rad` is the nilradical.

use std::time::Instant;

use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{FDAlgebra, FDModule};
use crate::budget::Budget;
use crate::exactlin::{kernel_basis, rank, Echelon, Rat, RatMatrix, SparseAccumulator, SparseVec, Subspace};
use crate::hochschild::{cohomology, homology_modules, HochschildError, Options};
use crate::simplicial::FinSimpSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomalgError {
    #[error("module has {module} action matrices but the algebra has dimension {algebra}")]
    ModuleMismatch { module: usize, algebra: usize },
    #[error("p_max = {p_max} must be at least n_max = {n_max}")]
    RangeTooShort { p_max: usize, n_max: usize },
    #[error(transparent)]
    Hochschild(#[from] HochschildError),
}

/// `… → A^{r_1} → A^{r_0} → M → 0`, truncated at the requested length.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    pub ranks: Vec<usize>,
    /// `maps[p − 1] : A^{r_p} → A^{r_{p−1}}` over ℚ, for `p ≥ 1`.
    pub maps: Vec<RatMatrix>,
    /// Images of the free generators of step `p`, as vectors of
    /// `A^{r_{p−1}}` (or of `M` when `p = 0`).
    pub generators: Vec<Vec<SparseVec>>,
    /// `A^{r_0} → M` over ℚ.
    pub augmentation: RatMatrix,
    /// True when some kernel vanished, so the resolution is finite.
    pub terminated: bool,
}

/// Multiplication by `x ∈ A` on `A^r`, summand by summand.
fn free_act(a: &FDAlgebra, x: &[(usize, Rat)], v: &[(usize, Rat)]) -> SparseVec {
    let n = a.dim();
    let mut acc = SparseAccumulator::new();
    for (i, s) in x {
        for (c, y) in v {
            let (k, j) = (c / n, c % n);
            for (l, z) in a.mul_basis(*i, j) {
                acc.add(k * n + l, s * y * z);
            }
        }
    }
    acc.finish()
}

/// Generators of the `A`-submodule spanned by `sub`, chosen from its basis:
/// those independent modulo `rad·sub`.
fn minimal_generators(rad: &Subspace, sub: &Subspace, act: impl Fn(&SparseVec, &SparseVec) -> SparseVec) -> Vec<SparseVec> {
    let mut ech = Echelon::new(sub.ambient_dim());
    for r in rad.basis() {
        for v in sub.basis() {
            ech.insert_rat(&act(r, v));
        }
    }
    sub.basis().iter().filter(|v| ech.insert_rat(v).is_some()).cloned().collect()
}

/// Resolution of `m` through step `length` (so `ranks` has `length + 1`
/// entries unless it terminates earlier).
pub fn free_resolution(a: &FDAlgebra, m: &FDModule, length: usize) -> Result<FreeResolution, HomalgError> {
    if m.action().len() != a.dim() {
        return Err(HomalgError::ModuleMismatch {
            module: m.action().len(),
            algebra: a.dim(),
        });
    }
    let n = a.dim();
    let rad = a.nilradical();

    // step 0: generators of M modulo rad·M
    let gens0 = minimal_generators(&rad, &Subspace::full(m.dim()), |r, v| m.act(r, v));
    let r0 = gens0.len();
    let aug_cols = (0..r0 * n).map(|c| m.act(&[(c % n, Rat::one())], &gens0[c / n])).collect();
    let augmentation = RatMatrix::from_columns(m.dim(), aug_cols).expect("coordinates in range");

    let mut ranks = vec![r0];
    let mut generators = vec![gens0];
    let mut maps = Vec::new();
    let mut previous = augmentation.clone();
    let mut terminated = false;
    for _ in 1..=length {
        let r_prev = *ranks.last().expect("nonempty");
        let kernel = kernel_basis(&previous);
        if kernel.dim() == 0 {
            terminated = true;
            break;
        }
        let gens = minimal_generators(&rad, &kernel, |r, v| free_act(a, r, v));
        let r = gens.len();
        let cols = (0..r * n).map(|c| free_act(a, &[(c % n, Rat::one())], &gens[c / n])).collect();
        let map = RatMatrix::from_columns(r_prev * n, cols).expect("coordinates in range");
        ranks.push(r);
        generators.push(gens);
        maps.push(map.clone());
        previous = map;
    }
    if !terminated && kernel_basis(&previous).dim() == 0 {
        terminated = true;
    }
    Ok(FreeResolution {
        ranks,
        maps,
        generators,
        augmentation,
        terminated,
    })
}

impl FreeResolution {
    /// Rank-exactness at every computed spot, the augmentation onto `M`,
    /// and consecutive composites vanishing.
    pub fn is_exact(&self, module_dim: usize) -> bool {
        if rank(&self.augmentation) != module_dim {
            return false;
        }
        let mut prev = &self.augmentation;
        for map in &self.maps {
            if !prev.mul(map).is_zero() {
                return false;
            }
            if prev.cols() - rank(prev) != rank(map) {
                return false;
            }
            prev = map;
        }
        true
    }
}

/// `Ext^p_A(M, N)` for `0 ≤ p ≤ p_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtTable {
    pub dims: Vec<usize>,
    pub resolution_ranks: Vec<usize>,
}

/// `Hom_A(F_{p−1}, N) → Hom_A(F_p, N)`, with `Hom_A(A^r, N) = N^r`.
fn hom_dual(a: &FDAlgebra, gens: &[SparseVec], r_prev: usize, nm: &FDModule) -> RatMatrix {
    let n = a.dim();
    let d = nm.dim();
    let mut triplets = Vec::new();
    for (k, g) in gens.iter().enumerate() {
        // split the generator's image into its A-coefficients per summand
        let mut blocks: Vec<SparseVec> = vec![Vec::new(); r_prev];
        for (c, x) in g {
            blocks[c / n].push((c % n, x.clone()));
        }
        for (j, coeff) in blocks.iter().enumerate() {
            if coeff.is_empty() {
                continue;
            }
            let rho = nm.action_of(coeff);
            for col in 0..d {
                for (row, x) in rho.column(col) {
                    triplets.push((k * d + row, j * d + col, x.clone()));
                }
            }
        }
    }
    RatMatrix::from_triplets(gens.len() * d, r_prev * d, triplets).expect("indices in range")
}

pub fn ext(a: &FDAlgebra, m: &FDModule, nm: &FDModule, p_max: usize) -> Result<ExtTable, HomalgError> {
    if nm.action().len() != a.dim() {
        return Err(HomalgError::ModuleMismatch {
            module: nm.action().len(),
            algebra: a.dim(),
        });
    }
    let res = free_resolution(a, m, p_max + 1)?;
    let d = nm.dim();
    // cochain maps δ^p : Hom(F_p, N) → Hom(F_{p+1}, N)
    let deltas: Vec<RatMatrix> = (0..res.maps.len())
        .map(|p| hom_dual(a, &res.generators[p + 1], res.ranks[p], nm))
        .collect();
    let delta_ranks: Vec<usize> = deltas.iter().map(rank).collect();
    let dims = (0..=p_max)
        .map(|p| {
            let Some(r) = res.ranks.get(p) else {
                return 0;
            };
            let out = delta_ranks.get(p).copied().unwrap_or(0);
            let inc = if p == 0 { 0 } else { delta_ranks.get(p - 1).copied().unwrap_or(0) };
            r * d - out - inc
        })
        .collect();
    Ok(ExtTable {
        dims,
        resolution_ranks: res.ranks,
    })
}

/// Outcome of comparing `H^n(K, A, M)` with `Σ_{p+q=n} dim Ext^p(H_q, M)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegenerationReport {
    pub space: String,
    pub algebra: String,
    pub n_max: usize,
    pub p_max: usize,
    pub lhs: Vec<usize>,
    pub rhs: Vec<usize>,
    pub homology_dims: Vec<usize>,
    /// `ext[q][p] = dim Ext^p_A(H_q(K, A), M)`.
    pub ext: Vec<Vec<usize>>,
    pub equal: Vec<bool>,
    /// The spectral-sequence bound; false would be a bug.
    pub lhs_le_rhs: bool,
    pub degenerates: bool,
    pub elapsed_ms: u64,
}

/// Needs `K` truncated at level `n_max + 2` or higher.
pub fn degeneration_check(
    k: &FinSimpSet,
    a: &FDAlgebra,
    m: &FDModule,
    n_max: usize,
    p_max: usize,
    budget: Budget,
) -> Result<DegenerationReport, HomalgError> {
    if p_max < n_max {
        return Err(HomalgError::RangeTooShort { p_max, n_max });
    }
    let started = Instant::now();
    let opts = Options::normalized(budget);
    let coh = cohomology(k, a, m, "M", n_max + 1, &opts)?;
    let lhs = coh.dims[..=n_max].to_vec();
    let modules = homology_modules(k, a, n_max + 1, budget)?;
    let ext_rows = modules
        .iter()
        .map(|h| ext(a, h, m, p_max).map(|t| t.dims))
        .collect::<Result<Vec<_>, _>>()?;
    let rhs: Vec<usize> = (0..=n_max)
        .map(|n| (0..=n).map(|q| ext_rows[q][n - q]).sum())
        .collect();
    let equal: Vec<bool> = lhs.iter().zip(&rhs).map(|(l, r)| l == r).collect();
    Ok(DegenerationReport {
        space: k.name().to_string(),
        algebra: a.name().to_string(),
        n_max,
        p_max,
        lhs_le_rhs: lhs.iter().zip(&rhs).all(|(l, r)| l <= r),
        degenerates: equal.iter().all(|e| *e),
        homology_dims: modules.iter().map(FDModule::dim).collect(),
        ext: ext_rows,
        lhs,
        rhs,
        equal,
        elapsed_ms: started.elapsed().as_millis() as u64,
    })
}
