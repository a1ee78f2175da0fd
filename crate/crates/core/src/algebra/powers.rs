//! Symmetric and exterior powers over `A`.
//!
//! `M^{⊗_ℚ j}` modulo balancing (`a` may move between factors) and the
//! (anti)symmetry relations for adjacent transpositions. `A` acts through
//! the first factor.

use num_traits::One;

use super::{AlgebraError, FDAlgebra, FDModule, TensorIndex};
use crate::budget::Budget;
use crate::exactlin::{Echelon, Rat, RatMatrix, SparseAccumulator, SparseVec};

fn act_at(m: &FDModule, idx: &TensorIndex, i: usize, p: usize, t: &[u32]) -> SparseVec {
    let mut acc = SparseAccumulator::new();
    let mut u = t.to_vec();
    for (k, x) in m.action()[i].column(t[p] as usize) {
        u[p] = *k as u32;
        acc.add(idx.flat(&u), x.clone());
    }
    acc.finish()
}

fn power(a: &FDAlgebra, m: &FDModule, j: usize, sign: i64, budget: Budget) -> Result<FDModule, AlgebraError> {
    if j == 0 {
        return Ok(FDModule::regular(a));
    }
    let idx = TensorIndex::new(m.dim(), j, budget)?;
    let width = idx.len();
    let mut rel = Echelon::new(width);
    for flat in 0..width {
        let t = idx.tuple(flat);
        for i in 0..a.dim() {
            let first = act_at(m, &idx, i, 0, &t);
            for p in 1..j {
                let mut acc = SparseAccumulator::new();
                for (k, x) in act_at(m, &idx, i, p, &t) {
                    acc.add(k, x);
                }
                for (k, x) in &first {
                    acc.add(*k, -x.clone());
                }
                rel.insert_rat(&acc.finish());
            }
        }
        for p in 0..j.saturating_sub(1) {
            let mut u = t.clone();
            u.swap(p, p + 1);
            let mut acc = SparseAccumulator::new();
            acc.add(flat, Rat::one());
            acc.add(idx.flat(&u), Rat::from_integer((-sign).into()));
            rel.insert_rat(&acc.finish());
        }
    }
    let complement: Vec<usize> = (0..width).filter(|c| !rel.is_pivot(*c)).collect();
    let mut position = vec![usize::MAX; width];
    for (k, c) in complement.iter().enumerate() {
        position[*c] = k;
    }
    let action = (0..a.dim())
        .map(|i| {
            let cols = complement
                .iter()
                .map(|c| {
                    rel.reduce_full_rat(&act_at(m, &idx, i, 0, &idx.tuple(*c)))
                        .into_iter()
                        .map(|(r, x)| (position[r], x))
                        .collect()
                })
                .collect();
            RatMatrix::from_columns(complement.len(), cols).expect("coordinates in range")
        })
        .collect();
    Ok(FDModule::new_unchecked(complement.len(), action))
}

/// `Sym^j_A(M)`.
pub fn sym_power(a: &FDAlgebra, m: &FDModule, j: usize, budget: Budget) -> Result<FDModule, AlgebraError> {
    power(a, m, j, 1, budget)
}

/// `Λ^j_A(M)`.
pub fn ext_power(a: &FDAlgebra, m: &FDModule, j: usize, budget: Budget) -> Result<FDModule, AlgebraError> {
    power(a, m, j, -1, budget)
}
