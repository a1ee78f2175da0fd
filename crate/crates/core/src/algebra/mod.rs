//! Commutative algebras and their modules over ℚ.
//!
//! Two flavours: [`FDAlgebra`], finite-dimensional and given by structure
//! constants, and [`GradedAlgebra`], a polynomial ring on weighted variables
//! modulo a monomial ideal, enumerated one weight at a time.

mod describe;
mod graded;
mod kahler;
mod localize;
mod powers;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::budget::{checked_pow, Budget};
use crate::exactlin::{
    kernel_basis, normalize, rank, rat, Rat, RatMatrix, SparseAccumulator, SparseVec,
    SpanSolver, Subspace,
};

pub use describe::{AlgebraDescription, ModuleDescription, RatLiteral};
pub use graded::{smooth_hodge_predicted_dim, GradedAlgebra, Monomial};
pub use kahler::{omega1_comparison, omega1_kernel, omega1_leibniz, KernelOmega, Omega1Comparison};
pub use localize::{localize, localize_module, Localization};
pub use powers::{ext_power, sym_power};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("multiplication is not commutative on basis pair ({0}, {1})")]
    NotCommutative(usize, usize),
    #[error("multiplication is not associative on basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("unit law fails on basis element {0}")]
    UnitLaw(usize),
    #[error("vector of length {got} where {expected} was expected")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("not a unital representation: {0}")]
    NotAModule(String),
    #[error("tensor power {dim}^{n} exceeds the size budget {budget}")]
    Overflow { dim: usize, n: usize, budget: usize },
    #[error("unknown preset '{0}'")]
    UnknownPreset(String),
    #[error("invalid algebra description: {0}")]
    Invalid(String),
}

/// Finite-dimensional commutative unital algebra given by structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FDAlgebra {
    name: String,
    dim: usize,
    /// `mult[i][j] = e_i · e_j`
    mult: Vec<Vec<SparseVec>>,
    unit: SparseVec,
}

impl FDAlgebra {
    /// Validates commutativity, associativity and the unit law exhaustively.
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        mult: Vec<Vec<SparseVec>>,
        unit: SparseVec,
    ) -> Result<Self, AlgebraError> {
        if mult.len() != dim || mult.iter().any(|r| r.len() != dim) {
            return Err(AlgebraError::DimensionMismatch {
                expected: dim,
                got: mult.len(),
            });
        }
        let check = |v: &SparseVec| -> Result<SparseVec, AlgebraError> {
            let v = normalize(v.clone());
            match v.last() {
                Some((i, _)) if *i >= dim => Err(AlgebraError::DimensionMismatch {
                    expected: dim,
                    got: i + 1,
                }),
                _ => Ok(v),
            }
        };
        let mult = mult
            .into_iter()
            .map(|row| row.iter().map(check).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let a = FDAlgebra {
            name: name.into(),
            dim,
            unit: check(&unit)?,
            mult,
        };
        a.check_axioms()?;
        Ok(a)
    }

    fn check_axioms(&self) -> Result<(), AlgebraError> {
        let n = self.dim;
        for i in 0..n {
            for j in i + 1..n {
                if self.mult[i][j] != self.mult[j][i] {
                    return Err(AlgebraError::NotCommutative(i, j));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let left = self.mul_vec_basis(&self.mult[i][j], k);
                    let right = self.mul_basis_vec(i, &self.mult[j][k]);
                    if left != right {
                        return Err(AlgebraError::NotAssociative(i, j, k));
                    }
                }
            }
        }
        for i in 0..n {
            if self.mul_vec_basis(&self.unit, i) != vec![(i, Rat::one())] {
                return Err(AlgebraError::UnitLaw(i));
            }
        }
        Ok(())
    }

    fn mul_vec_basis(&self, u: &[(usize, Rat)], k: usize) -> SparseVec {
        let mut acc = SparseAccumulator::new();
        for (i, x) in u {
            for (l, y) in &self.mult[*i][k] {
                acc.add(*l, x * y);
            }
        }
        acc.finish()
    }

    fn mul_basis_vec(&self, i: usize, v: &[(usize, Rat)]) -> SparseVec {
        let mut acc = SparseAccumulator::new();
        for (k, x) in v {
            for (l, y) in &self.mult[i][*k] {
                acc.add(*l, x * y);
            }
        }
        acc.finish()
    }

    /// `ℚ`.
    pub fn ground_field() -> Self {
        FDAlgebra::new("ground_field", 1, vec![vec![vec![(0, rat(1))]]], vec![(0, rat(1))])
            .expect("ℚ is an algebra")
    }

    /// The zero ring (what localizing at a nilpotent produces).
    pub fn zero_ring() -> Self {
        FDAlgebra {
            name: "zero".into(),
            dim: 0,
            mult: Vec::new(),
            unit: Vec::new(),
        }
    }

    /// `ℚ[x]/(f)` for monic `f = x^n + c_{n−1}x^{n−1} + … + c_0`, given the
    /// lower coefficients `[c_0, …, c_{n−1}]`. Basis `1, x, …, x^{n−1}`.
    pub fn monic_quotient(name: impl Into<String>, lower: &[Rat]) -> Self {
        let n = lower.len();
        assert!(n >= 1, "ℚ[x]/(f) needs deg f ≥ 1");
        // powers[k] = x^k reduced, for k < 2n − 1
        let mut powers: Vec<SparseVec> = (0..n).map(|k| vec![(k, Rat::one())]).collect();
        for k in n..2 * n - 1 {
            let prev = &powers[k - 1];
            let mut acc = SparseAccumulator::new();
            for (i, x) in prev {
                if i + 1 < n {
                    acc.add(i + 1, x.clone());
                } else {
                    for (l, c) in lower.iter().enumerate() {
                        acc.add(l, -(x * c));
                    }
                }
            }
            powers.push(acc.finish());
        }
        let mult = (0..n)
            .map(|i| (0..n).map(|j| powers[i + j].clone()).collect())
            .collect();
        FDAlgebra::new(name, n, mult, vec![(0, Rat::one())]).expect("monic quotients are algebras")
    }

    /// `ℚ[x]/(x^n)`.
    pub fn truncated_poly(n: usize) -> Self {
        FDAlgebra::monic_quotient(format!("truncated_poly({n})"), &vec![Rat::zero(); n])
    }

    /// `ℚ[x]/(x² − x) ≅ ℚ × ℚ`, basis `1, x`.
    pub fn split_pair() -> Self {
        FDAlgebra::monic_quotient("split_pair", &[Rat::zero(), rat(-1)])
    }

    /// `A × B` with basis `(e_i, 0)` then `(0, f_j)`.
    pub fn product(a: &FDAlgebra, b: &FDAlgebra) -> Self {
        let n = a.dim + b.dim;
        let shift = |v: &SparseVec| -> SparseVec { v.iter().map(|(i, x)| (i + a.dim, x.clone())).collect() };
        let mut mult = vec![vec![Vec::new(); n]; n];
        for i in 0..a.dim {
            for j in 0..a.dim {
                mult[i][j] = a.mult[i][j].clone();
            }
        }
        for i in 0..b.dim {
            for j in 0..b.dim {
                mult[a.dim + i][a.dim + j] = shift(&b.mult[i][j]);
            }
        }
        let mut unit = a.unit.clone();
        unit.extend(shift(&b.unit));
        FDAlgebra::new(format!("{}×{}", a.name, b.name), n, mult, unit).expect("products of algebras are algebras")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[(usize, Rat)] {
        &self.unit
    }

    /// `e_i · e_j` in the basis.
    pub fn mul_basis(&self, i: usize, j: usize) -> &[(usize, Rat)] {
        &self.mult[i][j]
    }

    pub fn structure_constants(&self) -> &[Vec<SparseVec>] {
        &self.mult
    }

    /// Bilinear product of two coordinate vectors.
    pub fn multiply(&self, u: &[(usize, Rat)], v: &[(usize, Rat)]) -> Result<SparseVec, AlgebraError> {
        for w in [u, v] {
            if let Some((i, _)) = w.iter().find(|(i, _)| *i >= self.dim) {
                return Err(AlgebraError::DimensionMismatch {
                    expected: self.dim,
                    got: i + 1,
                });
            }
        }
        Ok(self.mul_sparse(u, v))
    }

    pub(crate) fn mul_sparse(&self, u: &[(usize, Rat)], v: &[(usize, Rat)]) -> SparseVec {
        let mut acc = SparseAccumulator::new();
        for (i, x) in u {
            for (j, y) in v {
                let xy = x * y;
                for (k, c) in &self.mult[*i][*j] {
                    acc.add(*k, &xy * c);
                }
            }
        }
        acc.finish()
    }

    /// Dense-coordinates convenience wrapper around [`FDAlgebra::multiply`].
    pub fn multiply_dense(&self, u: &[Rat], v: &[Rat]) -> Result<Vec<Rat>, AlgebraError> {
        for w in [u, v] {
            if w.len() != self.dim {
                return Err(AlgebraError::DimensionMismatch {
                    expected: self.dim,
                    got: w.len(),
                });
            }
        }
        let sparse = |w: &[Rat]| -> SparseVec {
            w.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, x.clone()))
                .collect()
        };
        let prod = self.mul_sparse(&sparse(u), &sparse(v));
        let mut out = vec![Rat::zero(); self.dim];
        for (i, x) in prod {
            out[i] = x;
        }
        Ok(out)
    }

    /// Matrix of multiplication by `a`.
    pub fn left_mult_matrix(&self, a: &[(usize, Rat)]) -> RatMatrix {
        let columns = (0..self.dim)
            .map(|j| self.mul_sparse(a, &[(j, Rat::one())]))
            .collect();
        RatMatrix::from_columns(self.dim, columns).expect("products stay in range")
    }

    /// Whether basis element 0 is the unit.
    pub fn is_unit_adapted(&self) -> bool {
        self.dim == 0 || self.unit == vec![(0, Rat::one())]
    }

    /// An isomorphic algebra whose basis element 0 is the unit, with the
    /// change of basis (`columns[k]` = new basis vector `k` in old
    /// coordinates). The new basis is `1` followed by the old basis vectors
    /// independent of it, in order.
    pub fn unit_adapted(&self) -> (FDAlgebra, Vec<SparseVec>) {
        if self.is_unit_adapted() {
            let id = (0..self.dim).map(|i| vec![(i, Rat::one())]).collect();
            return (self.clone(), id);
        }
        let spanning = std::iter::once(self.unit.clone())
            .chain((0..self.dim).map(|i| vec![(i, Rat::one())]));
        let basis = Subspace::spanned_by(self.dim, spanning).basis().to_vec();
        let solver = SpanSolver::new(self.dim, &basis);
        let to_new = |v: &SparseVec| -> SparseVec {
            let coords = solver.solve(v).expect("basis spans the algebra");
            coords
                .into_iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .collect()
        };
        let mult = basis
            .iter()
            .map(|u| basis.iter().map(|v| to_new(&self.mul_sparse(u, v))).collect())
            .collect();
        let a = FDAlgebra::new(self.name.clone(), self.dim, mult, vec![(0, Rat::one())])
            .expect("change of basis preserves the axioms");
        (a, basis)
    }

    /// Nilradical, computed as the radical of the trace form
    /// `(a, b) ↦ Tr(L_{ab})`, which is exact in characteristic zero.
    pub fn nilradical(&self) -> Subspace {
        let traces: Vec<Vec<Rat>> = (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| self.left_mult_matrix(&self.mult[i][j]).trace())
                    .collect()
            })
            .collect();
        let rows: Vec<Vec<(usize, usize, Rat)>> = traces
            .iter()
            .enumerate()
            .map(|(i, row)| row.iter().enumerate().map(|(j, x)| (i, j, x.clone())).collect())
            .collect();
        let gram = RatMatrix::from_triplets(self.dim, self.dim, rows.into_iter().flatten())
            .expect("square");
        kernel_basis(&gram)
    }

    pub fn is_semisimple(&self) -> bool {
        self.nilradical().dim() == 0
    }

    pub fn is_nilpotent(&self, a: &[(usize, Rat)]) -> bool {
        self.left_mult_matrix(a).pow(self.dim.max(1)).is_zero()
    }
}

/// Lexicographic indexing of basis tuples of `A^{⊗n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TensorIndex {
    dim: usize,
    n: usize,
    len: usize,
}

impl TensorIndex {
    pub fn new(dim: usize, n: usize, budget: Budget) -> Result<Self, AlgebraError> {
        let overflow = AlgebraError::Overflow {
            dim,
            n,
            budget: budget.get(),
        };
        let len = checked_pow(dim, n).ok_or(overflow.clone())?;
        if len > budget.get() {
            return Err(overflow);
        }
        Ok(TensorIndex { dim, n, len })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn flat(&self, tuple: &[u32]) -> usize {
        debug_assert_eq!(tuple.len(), self.n);
        tuple.iter().fold(0, |acc, i| acc * self.dim + *i as usize)
    }

    pub fn tuple(&self, mut flat: usize) -> Vec<u32> {
        let mut t = vec![0u32; self.n];
        for slot in t.iter_mut().rev() {
            *slot = (flat % self.dim) as u32;
            flat /= self.dim;
        }
        t
    }
}

/// `tensor_power_index(a, n)` with the given budget.
pub fn tensor_power_index(a: &FDAlgebra, n: usize, budget: Budget) -> Result<TensorIndex, AlgebraError> {
    TensorIndex::new(a.dim(), n, budget)
}

/// Finite-dimensional module: `action[i]` is the matrix of basis element `e_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FDModule {
    dim: usize,
    action: Vec<RatMatrix>,
}

impl FDModule {
    /// Validates that `action` is a unital representation of `a`.
    pub fn new(a: &FDAlgebra, dim: usize, action: Vec<RatMatrix>) -> Result<Self, AlgebraError> {
        if action.len() != a.dim() {
            return Err(AlgebraError::NotAModule(format!(
                "{} action matrices for an algebra of dimension {}",
                action.len(),
                a.dim()
            )));
        }
        if action.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(AlgebraError::NotAModule(format!("action matrices must be {dim}×{dim}")));
        }
        let m = FDModule { dim, action };
        if m.action_of(a.unit()) != RatMatrix::identity(dim) {
            return Err(AlgebraError::NotAModule("unit does not act as identity".into()));
        }
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                if m.action[i].mul(&m.action[j]) != m.action_of(a.mul_basis(i, j)) {
                    return Err(AlgebraError::NotAModule(format!(
                        "ρ(e_{i})ρ(e_{j}) ≠ ρ(e_{i}e_{j})"
                    )));
                }
            }
        }
        Ok(m)
    }

    pub(crate) fn new_unchecked(dim: usize, action: Vec<RatMatrix>) -> Self {
        FDModule { dim, action }
    }

    /// `A` acting on itself.
    pub fn regular(a: &FDAlgebra) -> Self {
        let action = (0..a.dim()).map(|i| a.left_mult_matrix(&[(i, Rat::one())])).collect();
        FDModule { dim: a.dim(), action }
    }

    /// One-dimensional module where `e_i` acts by `values[i]`; fails unless
    /// `values` is an algebra map `A → ℚ`.
    pub fn character(a: &FDAlgebra, values: &[Rat]) -> Result<Self, AlgebraError> {
        if values.len() != a.dim() {
            return Err(AlgebraError::DimensionMismatch {
                expected: a.dim(),
                got: values.len(),
            });
        }
        let action = values
            .iter()
            .map(|x| RatMatrix::from_columns(1, vec![vec![(0, x.clone())]]).expect("1×1"))
            .collect();
        FDModule::new(a, 1, action)
    }

    /// `ℚ` with every non-unit basis element acting by zero, for unit-adapted
    /// algebras whose other basis elements span an ideal (the augmentation).
    pub fn augmentation(a: &FDAlgebra) -> Result<Self, AlgebraError> {
        let values: Vec<Rat> = (0..a.dim()).map(|i| if i == 0 { Rat::one() } else { Rat::zero() }).collect();
        FDModule::character(a, &values)
    }

    pub fn zero(a: &FDAlgebra) -> Self {
        FDModule {
            dim: 0,
            action: vec![RatMatrix::zeros(0, 0); a.dim()],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self) -> &[RatMatrix] {
        &self.action
    }

    /// `ρ(a)` for an algebra element in coordinates.
    pub fn action_of(&self, a: &[(usize, Rat)]) -> RatMatrix {
        a.iter().fold(RatMatrix::zeros(self.dim, self.dim), |acc, (i, x)| {
            acc.add(&self.action[*i].scaled(x))
        })
    }

    pub fn act(&self, a: &[(usize, Rat)], m: &[(usize, Rat)]) -> SparseVec {
        let mut acc = SparseAccumulator::new();
        for (i, x) in a {
            for (k, y) in self.action[*i].apply(m) {
                acc.add(k, x * y);
            }
        }
        acc.finish()
    }

    /// Transports the module along a change of algebra basis
    /// (`basis[k]` = new basis element `k` in old coordinates).
    pub fn rebase(&self, basis: &[SparseVec]) -> FDModule {
        FDModule {
            dim: self.dim,
            action: basis.iter().map(|b| self.action_of(b)).collect(),
        }
    }

    /// Dimension of `Hom_A(self, other)`, solved directly as the space of
    /// linear maps commuting with every action matrix.
    pub fn hom_dim(&self, other: &FDModule) -> usize {
        let (m, n) = (self.dim, other.dim);
        // unknown φ is n×m, coordinate (r, c) ↦ r*m + c
        let mut rows: Vec<(usize, usize, Rat)> = Vec::new();
        let mut eq = 0;
        for (rs, ro) in self.action.iter().zip(&other.action) {
            // (φ ρ_s − ρ_o φ)[r][c] = Σ_k φ[r][k] ρ_s[k][c] − Σ_k ρ_o[r][k] φ[k][c]
            for r in 0..n {
                for c in 0..m {
                    for (k, x) in rs.column(c) {
                        rows.push((eq, r * m + k, x.clone()));
                    }
                    for k in 0..n {
                        let y = ro.get(r, k);
                        if !y.is_zero() {
                            rows.push((eq, k * m + c, -y));
                        }
                    }
                    eq += 1;
                }
            }
        }
        let sys = RatMatrix::from_triplets(eq, n * m, rows).expect("indices in range");
        n * m - rank(&sys)
    }
}

/// The multiplicative system `{1, s, s², …}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultSystem {
    pub generator: SparseVec,
}

impl MultSystem {
    pub fn new(generator: SparseVec) -> Self {
        MultSystem { generator }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiply_examples() {
        let a = FDAlgebra::truncated_poly(2);
        let x = vec![(1, rat(1))];
        assert_eq!(a.multiply(&x, &x).unwrap(), vec![]);
        let v = vec![(0, rat(3)), (1, rat(-2))];
        assert_eq!(a.multiply(a.unit(), &v).unwrap(), v);
        let q2 = FDAlgebra::product(&FDAlgebra::ground_field(), &FDAlgebra::ground_field());
        assert_eq!(q2.multiply_dense(&[rat(1), rat(0)], &[rat(0), rat(1)]).unwrap(), vec![rat(0), rat(0)]);
        assert!(matches!(
            a.multiply(&[(2, rat(1))], &x),
            Err(AlgebraError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn split_pair_multiplies_idempotently() {
        let a = FDAlgebra::split_pair();
        assert_eq!(a.mul_basis(1, 1), &[(1, rat(1))]);
    }

    #[test]
    fn axioms_are_checked() {
        // e_1 e_1 = e_0 but e_0 is not the unit of this table
        let bad = FDAlgebra::new(
            "bad",
            2,
            vec![
                vec![vec![(0, rat(1))], vec![(1, rat(1))]],
                vec![vec![(0, rat(1))], vec![(0, rat(1))]],
            ],
            vec![(0, rat(1))],
        );
        assert!(matches!(bad, Err(AlgebraError::NotCommutative(0, 1))));
    }

    #[test]
    fn tensor_index_is_lexicographic() {
        let a = FDAlgebra::truncated_poly(2);
        assert_eq!(tensor_power_index(&a, 0, Budget(10)).unwrap().len(), 1);
        let t3 = tensor_power_index(&a, 3, Budget(10)).unwrap();
        assert_eq!(t3.len(), 8);
        let t2 = tensor_power_index(&a, 2, Budget(10)).unwrap();
        assert_eq!(t2.flat(&[1, 0]), 2);
        assert_eq!(t2.tuple(2), vec![1, 0]);
        assert!(matches!(
            tensor_power_index(&a, 4, Budget(10)),
            Err(AlgebraError::Overflow { .. })
        ));
    }

    #[test]
    fn unit_adaptation_of_a_product() {
        let q2 = FDAlgebra::product(&FDAlgebra::ground_field(), &FDAlgebra::ground_field());
        assert!(!q2.is_unit_adapted());
        let (b, basis) = q2.unit_adapted();
        assert!(b.is_unit_adapted());
        assert_eq!(basis[0], vec![(0, rat(1)), (1, rat(1))]);
        assert_eq!(b.nilradical().dim(), 0);
    }

    #[test]
    fn nilradical_of_truncations() {
        for n in 1..=5 {
            let a = FDAlgebra::truncated_poly(n);
            let rad = a.nilradical();
            assert_eq!(rad.dim(), n - 1);
            assert!(rad.basis().iter().all(|v| a.is_nilpotent(v)));
        }
        assert!(FDAlgebra::split_pair().is_semisimple());
    }

    #[test]
    fn modules_are_validated() {
        let a = FDAlgebra::truncated_poly(2);
        assert!(FDModule::augmentation(&a).is_ok());
        // x acting by 1 is not an algebra map since x² = 0
        assert!(FDModule::character(&a, &[rat(1), rat(1)]).is_err());
        let reg = FDModule::regular(&a);
        assert_eq!(FDModule::new(&a, 2, reg.action().to_vec()), Ok(reg.clone()));
        assert_eq!(reg.hom_dim(&reg), 2);
        assert_eq!(reg.hom_dim(&FDModule::augmentation(&a).unwrap()), 1);
    }
}
