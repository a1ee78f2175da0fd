//! Polynomial rings on weighted variables modulo monomial ideals.

use num_integer::binomial;
use num_traits::One;

use super::{AlgebraError, FDAlgebra};
use crate::exactlin::SparseVec;

/// Exponent vector.
pub type Monomial = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAlgebra {
    name: String,
    weights: Vec<u32>,
    relations: Vec<Monomial>,
}

impl GradedAlgebra {
    pub fn new(name: impl Into<String>, weights: Vec<u32>, relations: Vec<Monomial>) -> Result<Self, AlgebraError> {
        if weights.contains(&0) {
            return Err(AlgebraError::Invalid("variable weights must be positive".into()));
        }
        if let Some(r) = relations.iter().find(|r| r.len() != weights.len()) {
            return Err(AlgebraError::Invalid(format!(
                "relation {r:?} has {} exponents for {} variables",
                r.len(),
                weights.len()
            )));
        }
        if relations.iter().any(|r| r.iter().all(|e| *e == 0)) {
            return Err(AlgebraError::Invalid("the relation 1 would give the zero ring".into()));
        }
        Ok(GradedAlgebra {
            name: name.into(),
            weights,
            relations,
        })
    }

    /// `ℚ[x_1..x_m]` with weight-1 variables.
    pub fn polynomial(m: usize) -> Self {
        GradedAlgebra::new(format!("poly({m})"), vec![1; m], Vec::new()).expect("valid")
    }

    /// `ℚ[x]/(x^n)` with `x` of weight 1.
    pub fn truncated(n: usize) -> Self {
        GradedAlgebra::new(format!("truncated_poly({n})"), vec![1], vec![vec![n as u32]]).expect("valid")
    }

    /// `ℚ[x_1..x_m]` modulo every monomial of degree 2.
    pub fn square_zero(m: usize) -> Self {
        let mut relations = Vec::new();
        for i in 0..m {
            for j in i..m {
                let mut r = vec![0; m];
                r[i] += 1;
                r[j] += 1;
                relations.push(r);
            }
        }
        GradedAlgebra::new(format!("square_zero({m})"), vec![1; m], relations).expect("valid")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn num_vars(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn relations(&self) -> &[Monomial] {
        &self.relations
    }

    pub fn weight(&self, m: &[u32]) -> usize {
        m.iter().zip(&self.weights).map(|(e, w)| (*e * *w) as usize).sum()
    }

    pub fn in_ideal(&self, m: &[u32]) -> bool {
        self.relations.iter().any(|r| r.iter().zip(m).all(|(a, b)| a <= b))
    }

    /// Product of two standard monomials, or `None` if it lies in the ideal.
    pub fn multiply(&self, a: &[u32], b: &[u32]) -> Option<Monomial> {
        let m: Monomial = a.iter().zip(b).map(|(x, y)| x + y).collect();
        (!self.in_ideal(&m)).then_some(m)
    }

    /// Standard monomials of weight `w`, in descending lexicographic order
    /// of exponent vectors (so `x², xy, y²`).
    pub fn weight_basis(&self, w: usize) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.num_vars()];
        self.enumerate(0, w, &mut cur, &mut out);
        out
    }

    fn enumerate(&self, var: usize, remaining: usize, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if var == self.num_vars() {
            if remaining == 0 && !self.in_ideal(cur) {
                out.push(cur.clone());
            }
            return;
        }
        let w = self.weights[var] as usize;
        for e in (0..=remaining / w).rev() {
            cur[var] = e as u32;
            self.enumerate(var + 1, remaining - e * w, cur, out);
        }
        cur[var] = 0;
    }

    /// Whether every variable has a pure power in the ideal.
    pub fn is_finite(&self) -> bool {
        (0..self.num_vars()).all(|i| self.pure_power_bound(i).is_some())
    }

    fn pure_power_bound(&self, var: usize) -> Option<u32> {
        self.relations
            .iter()
            .filter(|r| r.iter().enumerate().all(|(j, e)| j == var || *e == 0))
            .map(|r| r[var])
            .min()
    }

    /// The whole algebra with basis ordered by weight, then as in
    /// [`GradedAlgebra::weight_basis`]; the unit is basis element 0.
    pub fn to_fd_algebra(&self) -> Option<FDAlgebra> {
        let (basis, _) = self.finite_basis()?;
        let index = |m: &Monomial| basis.iter().position(|b| b == m).expect("standard monomial");
        let mult = basis
            .iter()
            .map(|a| {
                basis
                    .iter()
                    .map(|b| -> SparseVec {
                        self.multiply(a, b)
                            .map(|m| vec![(index(&m), One::one())])
                            .unwrap_or_default()
                    })
                    .collect()
            })
            .collect();
        Some(
            FDAlgebra::new(self.name.clone(), basis.len(), mult, vec![(0, One::one())])
                .expect("monomial quotients are algebras"),
        )
    }

    /// All standard monomials and their weights, when finitely many.
    pub fn finite_basis(&self) -> Option<(Vec<Monomial>, Vec<usize>)> {
        let bounds: Vec<u32> = (0..self.num_vars())
            .map(|i| self.pure_power_bound(i))
            .collect::<Option<_>>()?;
        let top: usize = bounds
            .iter()
            .zip(&self.weights)
            .map(|(b, w)| ((b - 1) * w) as usize)
            .sum();
        let mut basis = Vec::new();
        let mut weights = Vec::new();
        for w in 0..=top {
            for m in self.weight_basis(w) {
                basis.push(m);
                weights.push(w);
            }
        }
        Some((basis, weights))
    }

    /// Human-readable form such as `x^2*y`.
    pub fn display_monomial(&self, m: &[u32]) -> String {
        let names = var_names(self.num_vars());
        let parts: Vec<String> = m
            .iter()
            .zip(&names)
            .filter(|(e, _)| **e > 0)
            .map(|(e, n)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

fn var_names(m: usize) -> Vec<String> {
    if m <= 3 {
        ["x", "y", "z"][..m].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=m).map(|i| format!("x{i}")).collect()
    }
}

/// Weight-`w` dimension of `Ω^j` (odd `d`) or `Sym^j Ω¹` (even `d`) over
/// `ℚ[x_1..x_m]` with weight-1 variables.
pub fn smooth_hodge_predicted_dim(m: usize, d: usize, j: usize, w: usize) -> usize {
    let rank = if d % 2 == 1 {
        if j > m {
            0
        } else {
            binomial(m, j)
        }
    } else if m == 0 {
        usize::from(j == 0)
    } else {
        binomial(m + j - 1, j)
    };
    if w < j {
        return 0;
    }
    let monomials = if m == 0 {
        usize::from(w == j)
    } else {
        binomial(w - j + m - 1, m - 1)
    };
    rank * monomials
}
