//! Kähler differentials, built two independent ways.

use num_traits::{One, Zero};

use super::{FDAlgebra, FDModule};
use crate::exactlin::{kernel_basis, rank, Echelon, Rat, RatMatrix, SparseAccumulator, SparseVec, SpanSolver, Subspace};

/// `Ω¹ = I/I²` with `I = ker(μ : A⊗A → A)`. Elements of `A⊗A` use the
/// index `i·dim + j` for `e_i ⊗ e_j`.
#[derive(Clone, Debug)]
pub struct KernelOmega {
    pub module: FDModule,
    pub ideal: Subspace,
    pub square: Subspace,
    /// Elements of `I` whose classes form the basis of `I/I²`.
    pub reps: Vec<SparseVec>,
    solver: SpanSolver,
}

impl KernelOmega {
    /// Class of an element of `I` in the basis of `I/I²`; `None` outside `I`.
    pub fn coords(&self, v: &[(usize, Rat)]) -> Option<SparseVec> {
        let sq = self.square.dim();
        let c = self.solver.solve(v)?;
        Some(
            c.into_iter()
                .enumerate()
                .skip(sq)
                .filter(|(_, x)| !x.is_zero())
                .map(|(k, x)| (k - sq, x))
                .collect(),
        )
    }
}

fn tensor_mul(a: &FDAlgebra, u: &[(usize, Rat)], v: &[(usize, Rat)]) -> SparseVec {
    let n = a.dim();
    let mut acc = SparseAccumulator::new();
    for (p, x) in u {
        let (i, j) = (p / n, p % n);
        for (q, y) in v {
            let (k, l) = (q / n, q % n);
            let xy = x * y;
            for (r, c) in a.mul_basis(i, k) {
                let xyc = &xy * c;
                for (s, d) in a.mul_basis(j, l) {
                    acc.add(r * n + s, &xyc * d);
                }
            }
        }
    }
    acc.finish()
}

/// `a ⊗ 1` for a basis element `a = e_m`.
fn left_basis_tensor(a: &FDAlgebra, m: usize) -> SparseVec {
    a.unit().iter().map(|(k, u)| (m * a.dim() + k, u.clone())).collect()
}

pub fn omega1_kernel(a: &FDAlgebra) -> KernelOmega {
    let n = a.dim();
    let mu = RatMatrix::from_columns(
        n,
        (0..n * n).map(|p| a.mul_basis(p / n, p % n).to_vec()).collect(),
    )
    .expect("products stay in range");
    let ideal = kernel_basis(&mu);
    let gens = ideal.basis();
    let products = (0..gens.len())
        .flat_map(|p| (p..gens.len()).map(move |q| (p, q)))
        .map(|(p, q)| tensor_mul(a, &gens[p], &gens[q]));
    let square = Subspace::spanned_by(n * n, products);
    let mut ech = square.echelon();
    let reps: Vec<SparseVec> = gens.iter().filter(|g| ech.insert_rat(g).is_some()).cloned().collect();
    let solver = SpanSolver::new(n * n, &[square.basis(), &reps[..]].concat());
    let mut omega = KernelOmega {
        module: FDModule::new_unchecked(reps.len(), Vec::new()),
        ideal,
        square,
        reps,
        solver,
    };
    let action = (0..n)
        .map(|m| {
            let lm = left_basis_tensor(a, m);
            let cols = omega
                .reps
                .iter()
                .map(|r| omega.coords(&tensor_mul(a, &lm, r)).expect("I is an ideal"))
                .collect();
            RatMatrix::from_columns(omega.reps.len(), cols).expect("coordinates in range")
        })
        .collect();
    omega.module = FDModule::new_unchecked(omega.reps.len(), action);
    omega
}

/// The free module on `d(e_j)` modulo Leibniz, with `e_k·d(e_j)` at index
/// `k·dim + j`.
struct LeibnizOmega {
    module: FDModule,
    relations: Echelon,
    complement: Vec<usize>,
}

fn free_action(a: &FDAlgebra, m: usize, v: &[(usize, Rat)]) -> SparseVec {
    let n = a.dim();
    let mut acc = SparseAccumulator::new();
    for (p, x) in v {
        let (k, j) = (p / n, p % n);
        for (q, c) in a.mul_basis(m, k) {
            acc.add(q * n + j, x * c);
        }
    }
    acc.finish()
}

fn leibniz(a: &FDAlgebra) -> LeibnizOmega {
    let n = a.dim();
    let mut relations = Echelon::new(n * n);
    for i in 0..n {
        for j in i..n {
            // d(e_i e_j) − e_i d(e_j) − e_j d(e_i)
            let mut acc = SparseAccumulator::new();
            for (l, c) in a.mul_basis(i, j) {
                for (k, u) in a.unit() {
                    acc.add(k * n + l, c * u);
                }
            }
            acc.add(i * n + j, -Rat::one());
            acc.add(j * n + i, -Rat::one());
            let r = acc.finish();
            for m in 0..n {
                relations.insert_rat(&free_action(a, m, &r));
            }
        }
    }
    let complement: Vec<usize> = (0..n * n).filter(|c| !relations.is_pivot(*c)).collect();
    let mut position = vec![usize::MAX; n * n];
    for (k, c) in complement.iter().enumerate() {
        position[*c] = k;
    }
    let action = (0..n)
        .map(|m| {
            let cols = complement
                .iter()
                .map(|c| {
                    relations
                        .reduce_full_rat(&free_action(a, m, &[(*c, Rat::one())]))
                        .into_iter()
                        .map(|(r, x)| (position[r], x))
                        .collect()
                })
                .collect();
            RatMatrix::from_columns(complement.len(), cols).expect("coordinates in range")
        })
        .collect();
    LeibnizOmega {
        module: FDModule::new_unchecked(complement.len(), action),
        relations,
        complement,
    }
}

pub fn omega1_leibniz(a: &FDAlgebra) -> FDModule {
    leibniz(a).module
}

/// The map `e_k·d(e_j) ↦ [e_k ⊗ e_j − e_k e_j ⊗ 1]` from the Leibniz
/// presentation to `I/I²`, with the checks that make it an isomorphism.
#[derive(Clone, Debug)]
pub struct Omega1Comparison {
    pub matrix: RatMatrix,
    pub well_defined: bool,
    pub a_linear: bool,
    pub bijective: bool,
}

impl Omega1Comparison {
    pub fn is_isomorphism(&self) -> bool {
        self.well_defined && self.a_linear && self.bijective
    }
}

pub fn omega1_comparison(a: &FDAlgebra) -> Omega1Comparison {
    let n = a.dim();
    let kernel = omega1_kernel(a);
    let leib = leibniz(a);
    let lift = |p: usize| -> SparseVec {
        let (k, j) = (p / n, p % n);
        let mut acc = SparseAccumulator::new();
        acc.add(k * n + j, Rat::one());
        for (l, c) in a.mul_basis(k, j) {
            for (q, u) in a.unit() {
                acc.add(l * n + q, -(c * u));
            }
        }
        acc.finish()
    };
    let lift_vec = |v: &[(usize, Rat)]| -> SparseVec {
        let mut acc = SparseAccumulator::new();
        for (p, x) in v {
            for (q, y) in lift(*p) {
                acc.add(q, x * &y);
            }
        }
        acc.finish()
    };
    let square = kernel.square.echelon();
    let well_defined = leib.relations.rows().iter().all(|row| {
        let v: SparseVec = row.iter().map(|(c, x)| (*c, Rat::from_integer(x.clone()))).collect();
        let image = lift_vec(&v);
        kernel.ideal.contains(&image) && square.contains_rat(&image)
    });
    let cols = leib
        .complement
        .iter()
        .map(|c| kernel.coords(&lift(*c)).unwrap_or_default())
        .collect();
    let matrix = RatMatrix::from_columns(kernel.module.dim(), cols).expect("coordinates in range");
    let a_linear = (0..n).all(|m| {
        matrix.mul(&leib.module.action()[m]) == kernel.module.action()[m].mul(&matrix)
    });
    let bijective = matrix.rows() == matrix.cols() && rank(&matrix) == matrix.cols();
    Omega1Comparison {
        matrix,
        well_defined,
        a_linear,
        bijective,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GradedAlgebra;

    #[test]
    fn truncated_polynomials() {
        for n in 1..=6 {
            let a = FDAlgebra::truncated_poly(n);
            assert_eq!(omega1_kernel(&a).module.dim(), n - 1, "kernel route, n = {n}");
            assert_eq!(omega1_leibniz(&a).dim(), n - 1, "Leibniz route, n = {n}");
            assert!(omega1_comparison(&a).is_isomorphism());
        }
    }

    #[test]
    fn reduced_algebras_have_no_differentials() {
        for a in [FDAlgebra::ground_field(), FDAlgebra::split_pair()] {
            assert_eq!(omega1_kernel(&a).module.dim(), 0);
            assert_eq!(omega1_leibniz(&a).dim(), 0);
        }
    }

    #[test]
    fn square_zero_plane() {
        let a = GradedAlgebra::square_zero(2).to_fd_algebra().unwrap();
        assert_eq!(omega1_leibniz(&a).dim(), 3);
        let cmp = omega1_comparison(&a);
        assert!(cmp.is_isomorphism());
    }

    #[test]
    fn modules_are_valid() {
        let a = FDAlgebra::truncated_poly(4);
        let k = omega1_kernel(&a).module;
        assert!(FDModule::new(&a, k.dim(), k.action().to_vec()).is_ok());
        let l = omega1_leibniz(&a);
        assert!(FDModule::new(&a, l.dim(), l.action().to_vec()).is_ok());
    }
}
