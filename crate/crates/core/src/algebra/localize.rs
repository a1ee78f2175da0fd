//! Localization of finite-dimensional algebras at one element.
//!
//! For Artinian `A`, multiplication by `s` splits `A` (Fitting) into a part
//! where `s` is invertible and a part where it is nilpotent. `A_s` is the
//! first part; its unit is the idempotent `e` cut out of `1`, and the
//! structure map is `a ↦ a·e`.

use num_traits::Zero;

use super::{AlgebraError, FDAlgebra, FDModule, MultSystem};
use crate::exactlin::{image_basis, kernel_basis, Rat, RatMatrix, SparseAccumulator, SparseVec, SpanSolver, Subspace};

#[derive(Clone, Debug)]
pub struct Localization {
    pub algebra: FDAlgebra,
    /// `A → A_s`, `dim A_s × dim A`.
    pub map: RatMatrix,
    /// Basis of `A_s` as elements of `A`; element 0 is the idempotent.
    pub basis_in_source: Vec<SparseVec>,
}

impl Localization {
    pub fn is_zero(&self) -> bool {
        self.algebra.dim() == 0
    }

    pub fn idempotent(&self) -> SparseVec {
        self.basis_in_source.first().cloned().unwrap_or_default()
    }
}

fn to_coords(solver: &SpanSolver, v: &[(usize, Rat)]) -> SparseVec {
    solver
        .solve(v)
        .expect("vector lies in the span")
        .into_iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .collect()
}

pub fn localize(a: &FDAlgebra, s: &MultSystem) -> Result<Localization, AlgebraError> {
    let n = a.dim();
    if let Some((i, _)) = s.generator.iter().find(|(i, _)| *i >= n) {
        return Err(AlgebraError::DimensionMismatch { expected: n, got: i + 1 });
    }
    let power = a.left_mult_matrix(&s.generator).pow(n);
    let image = image_basis(&power);
    if image.dim() == 0 {
        return Ok(Localization {
            algebra: FDAlgebra::zero_ring(),
            map: RatMatrix::zeros(0, n),
            basis_in_source: Vec::new(),
        });
    }
    let kernel = kernel_basis(&power);
    let split = SpanSolver::new(n, &[image.basis(), kernel.basis()].concat());
    let unit_split = split.solve(a.unit()).expect("image ⊕ kernel = A");
    let mut acc = SparseAccumulator::new();
    for (coef, b) in unit_split.iter().zip(image.basis()) {
        for (k, x) in b {
            acc.add(*k, coef * x);
        }
    }
    let e = acc.finish();
    let basis = Subspace::spanned_by(n, std::iter::once(e.clone()).chain(image.basis().iter().cloned()))
        .basis()
        .to_vec();
    let solver = SpanSolver::new(n, &basis);
    let mult = basis
        .iter()
        .map(|u| basis.iter().map(|v| to_coords(&solver, &a.mul_sparse(u, v))).collect())
        .collect();
    let algebra = FDAlgebra::new(
        format!("{}[1/s]", a.name()),
        basis.len(),
        mult,
        vec![(0, Rat::from_integer(1.into()))],
    )?;
    let map_cols = (0..n)
        .map(|j| to_coords(&solver, &a.mul_sparse(&[(j, Rat::from_integer(1.into()))], &e)))
        .collect();
    let map = RatMatrix::from_columns(basis.len(), map_cols).expect("coordinates in range");
    Ok(Localization {
        algebra,
        map,
        basis_in_source: basis,
    })
}

/// `M_s = e·M` as a module over `A_s`.
pub fn localize_module(m: &FDModule, loc: &Localization) -> FDModule {
    let e = loc.idempotent();
    let proj = m.action_of(&e);
    let sub = image_basis(&proj);
    let solver = SpanSolver::new(m.dim(), sub.basis());
    let action = loc
        .basis_in_source
        .iter()
        .map(|v| {
            let rho = m.action_of(v);
            let cols = sub.basis().iter().map(|b| to_coords(&solver, &rho.apply(b))).collect();
            RatMatrix::from_columns(sub.dim(), cols).expect("coordinates in range")
        })
        .collect();
    FDModule::new_unchecked(sub.dim(), action)
}
