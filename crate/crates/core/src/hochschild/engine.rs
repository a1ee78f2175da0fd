//! Tensor-face engine shared by every complex builder.
//!
//! A degree-n basis element is a tuple of algebra basis indices, one per
//! simplex of `K_n`. Face maps push tuples forward by multiplying factors
//! along fibres (the unit on empty fibres).

use std::collections::HashMap;

use num_traits::One;

use super::HochschildError;
use crate::algebra::{FDAlgebra, GradedAlgebra, Monomial};
use crate::budget::{checked_pow, Budget};
use crate::exactlin::{ChainComplex, Grading, Rat, RatMatrix, SparseAccumulator, SparseVec};
use crate::simplicial::FinSimpSet;

/// Structure constants plus the bookkeeping the engine needs.
#[derive(Clone, Debug)]
pub(crate) struct FactorAlgebra {
    pub dim: usize,
    mult: Vec<Vec<SparseVec>>,
    unit: SparseVec,
    /// Set when the unit is a basis element; unit factors are then skipped.
    unit_index: Option<u32>,
    /// Per-basis-element weight, for graded algebras.
    pub weights: Option<Vec<usize>>,
}

impl FactorAlgebra {
    pub fn from_fd(a: &FDAlgebra) -> Self {
        let unit_index = match a.unit() {
            [(i, x)] if x.is_one() => Some(*i as u32),
            _ => None,
        };
        FactorAlgebra {
            dim: a.dim(),
            mult: a.structure_constants().to_vec(),
            unit: a.unit().to_vec(),
            unit_index,
            weights: None,
        }
    }

    /// `g / g_{>w}`: monomials of weight at most `w`, ordered by weight.
    /// Returns the monomial list alongside.
    pub fn truncated_graded(g: &GradedAlgebra, w: usize) -> (Self, Vec<Monomial>) {
        let mut monos = Vec::new();
        let mut weights = Vec::new();
        for v in 0..=w {
            for m in g.weight_basis(v) {
                monos.push(m);
                weights.push(v);
            }
        }
        let index: HashMap<&Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mult = monos
            .iter()
            .map(|a| {
                monos
                    .iter()
                    .map(|b| {
                        g.multiply(a, b)
                            .and_then(|m| index.get(&m).map(|i| vec![(*i, Rat::one())]))
                            .unwrap_or_default()
                    })
                    .collect()
            })
            .collect();
        let fa = FactorAlgebra {
            dim: monos.len(),
            mult,
            unit: vec![(0, Rat::one())],
            unit_index: Some(0),
            weights: Some(weights),
        };
        (fa, monos)
    }

    pub fn is_unit_adapted(&self) -> bool {
        self.unit_index == Some(0)
    }

    fn times_basis(&self, v: &[(usize, Rat)], b: u32) -> SparseVec {
        let mut acc = SparseAccumulator::new();
        for (i, x) in v {
            for (k, c) in &self.mult[*i][b as usize] {
                acc.add(*k, x * c);
            }
        }
        acc.finish()
    }

    /// Product of the factors of `t` at `fiber`; `None` when it vanishes.
    fn fiber_product(&self, fiber: &[u32], t: &[u32]) -> Option<SparseVec> {
        let mut acc: Option<SparseVec> = None;
        for &x in fiber {
            let b = t[x as usize];
            if Some(b) == self.unit_index {
                continue;
            }
            let next = match acc {
                None => vec![(b as usize, Rat::one())],
                Some(v) => self.times_basis(&v, b),
            };
            if next.is_empty() {
                return None;
            }
            acc = Some(next);
        }
        Some(acc.unwrap_or_else(|| self.unit.clone()))
    }

    /// `f_*(t)` as a list of (tuple, coefficient), where `fibers[y]` lists
    /// the preimages of `y`.
    pub fn push_forward(&self, fibers: &[Vec<u32>], t: &[u32]) -> Vec<(Vec<u32>, Rat)> {
        let mut factors = Vec::with_capacity(fibers.len());
        for fiber in fibers {
            match self.fiber_product(fiber, t) {
                Some(v) => factors.push(v),
                None => return Vec::new(),
            }
        }
        let mut out: Vec<(Vec<u32>, Rat)> = vec![(Vec::with_capacity(fibers.len()), Rat::one())];
        for f in &factors {
            if let [(k, x)] = &f[..] {
                for (tuple, c) in out.iter_mut() {
                    tuple.push(*k as u32);
                    if !x.is_one() {
                        *c *= x;
                    }
                }
            } else {
                out = out
                    .into_iter()
                    .flat_map(|(tuple, c)| {
                        f.iter().map(move |(k, x)| {
                            let mut u = tuple.clone();
                            u.push(*k as u32);
                            (u, &c * x)
                        })
                    })
                    .collect();
            }
        }
        out
    }
}

/// Preimage lists of a map of finite sets.
pub(crate) fn fibers(map: &[u32], codomain: usize) -> Vec<Vec<u32>> {
    let mut f = vec![Vec::new(); codomain];
    for (x, y) in map.iter().enumerate() {
        f[*y as usize].push(x as u32);
    }
    f
}

/// The basis of one degree.
#[derive(Clone, Debug)]
pub(crate) enum DegreeBasis {
    /// Every tuple, indexed lexicographically.
    Full { dim: usize, len: usize, width: usize },
    /// An explicit list in lexicographic order.
    Listed {
        tuples: Vec<Box<[u32]>>,
        index: HashMap<Box<[u32]>, usize>,
    },
}

impl DegreeBasis {
    pub fn full(dim: usize, width: usize, budget: usize, degree: usize) -> Result<Self, HochschildError> {
        let len = checked_pow(dim, width)
            .filter(|l| *l <= budget)
            .ok_or(HochschildError::BudgetExceeded { degree, budget })?;
        Ok(DegreeBasis::Full { dim, len, width })
    }

    pub fn listed(tuples: Vec<Box<[u32]>>) -> Self {
        let index = tuples.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        DegreeBasis::Listed { tuples, index }
    }

    pub fn len(&self) -> usize {
        match self {
            DegreeBasis::Full { len, .. } => *len,
            DegreeBasis::Listed { tuples, .. } => tuples.len(),
        }
    }

    pub fn index_of(&self, t: &[u32]) -> Option<usize> {
        match self {
            DegreeBasis::Full { dim, .. } => Some(t.iter().fold(0, |acc, i| acc * dim + *i as usize)),
            DegreeBasis::Listed { index, .. } => index.get(t).copied(),
        }
    }

    pub fn tuple(&self, i: usize) -> Vec<u32> {
        match self {
            DegreeBasis::Full { dim, width, .. } => {
                let mut t = vec![0u32; *width];
                let mut rest = i;
                for slot in t.iter_mut().rev() {
                    *slot = (rest % dim) as u32;
                    rest /= dim;
                }
                t
            }
            DegreeBasis::Listed { tuples, .. } => tuples[i].to_vec(),
        }
    }
}

/// Which tuples a degree keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Selection {
    /// Drop tuples lying in the degenerate subcomplex (needs a unit-adapted
    /// algebra).
    pub normalized: bool,
    /// Keep only tuples of this total weight (needs weights).
    pub weight: Option<usize>,
}

/// Enumerates admissible tuples of level `n` in lexicographic order.
fn enumerate_level(
    alg: &FactorAlgebra,
    k: &FinSimpSet,
    n: usize,
    sel: Selection,
    budget: usize,
) -> Result<DegreeBasis, HochschildError> {
    let width = k.level_size(n);
    if !sel.normalized && sel.weight.is_none() {
        return DegreeBasis::full(alg.dim, width, budget, n);
    }
    if sel.normalized && n > 64 {
        return Err(HochschildError::LevelTooHigh(n));
    }
    let masks = if sel.normalized { k.non_degeneracy_masks(n) } else { vec![0; width] };
    let full: u64 = if n == 0 || !sel.normalized { 0 } else { u64::MAX >> (64 - n) };
    let mut suffix = vec![0u64; width + 1];
    for x in (0..width).rev() {
        suffix[x] = suffix[x + 1] | masks[x];
    }
    let weights = sel.weight.map(|_| alg.weights.as_ref().expect("weighted selection needs weights"));
    let target = sel.weight.unwrap_or(0);
    let mut out: Vec<Box<[u32]>> = Vec::new();
    let mut cur = vec![0u32; width];

    struct Walk<'a> {
        dim: u32,
        masks: &'a [u64],
        suffix: &'a [u64],
        full: u64,
        weights: Option<&'a Vec<usize>>,
        target: usize,
        budget: usize,
        degree: usize,
    }

    fn go(
        w: &Walk<'_>,
        x: usize,
        covered: u64,
        weight: usize,
        cur: &mut Vec<u32>,
        out: &mut Vec<Box<[u32]>>,
    ) -> Result<(), HochschildError> {
        if covered | w.suffix[x] != w.full {
            return Ok(());
        }
        if x == cur.len() {
            if w.weights.is_none() || weight == w.target {
                if out.len() == w.budget {
                    return Err(HochschildError::BudgetExceeded {
                        degree: w.degree,
                        budget: w.budget,
                    });
                }
                out.push(cur.clone().into_boxed_slice());
            }
            return Ok(());
        }
        for b in 0..w.dim {
            let bw = w.weights.map_or(0, |ws| ws[b as usize]);
            if w.weights.is_some() && weight + bw > w.target {
                // basis ordered by weight, so later ones are heavier still
                break;
            }
            cur[x] = b;
            let cov = if b == 0 { covered } else { covered | w.masks[x] };
            go(w, x + 1, cov, weight + bw, cur, out)?;
        }
        cur[x] = 0;
        Ok(())
    }

    let walk = Walk {
        dim: alg.dim as u32,
        masks: &masks,
        suffix: &suffix,
        full,
        weights,
        target,
        budget,
        degree: n,
    };
    go(&walk, 0, 0, 0, &mut cur, &mut out)?;
    Ok(DegreeBasis::listed(out))
}

/// A Hochschild-type chain complex together with its bases.
#[derive(Clone, Debug)]
pub(crate) struct BuiltComplex {
    pub complex: ChainComplex,
    pub bases: Vec<DegreeBasis>,
    pub alg: FactorAlgebra,
}

pub(crate) fn check_truncation(k: &FinSimpSet, n: usize) -> Result<(), HochschildError> {
    if k.trunc_level() < n + 1 {
        return Err(HochschildError::TruncationTooShallow {
            have: k.trunc_level(),
            needed: n + 1,
        });
    }
    Ok(())
}

/// Builds degrees `0..=top` of `C(K, A)` restricted to `sel`.
pub(crate) fn build_chain_complex(
    k: &FinSimpSet,
    alg: FactorAlgebra,
    top: usize,
    sel: Selection,
    budget: Budget,
) -> Result<BuiltComplex, HochschildError> {
    check_truncation(k, top)?;
    debug_assert!(!sel.normalized || alg.is_unit_adapted());
    let mut remaining = budget.get();
    let mut bases = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let b = enumerate_level(&alg, k, n, sel, remaining).map_err(|e| match e {
            HochschildError::BudgetExceeded { degree, .. } => HochschildError::BudgetExceeded {
                degree,
                budget: budget.get(),
            },
            other => other,
        })?;
        remaining -= b.len();
        bases.push(b);
    }
    let mut differentials = vec![RatMatrix::zeros(0, bases[0].len())];
    for n in 1..=top {
        let face_fibers: Vec<Vec<Vec<u32>>> = (0..=n)
            .map(|i| fibers(k.face_map(n, i), k.level_size(n - 1)))
            .collect();
        let source = &bases[n];
        let target = &bases[n - 1];
        let columns = (0..source.len())
            .map(|c| {
                let t = source.tuple(c);
                let mut acc = SparseAccumulator::new();
                for (i, f) in face_fibers.iter().enumerate() {
                    for (u, x) in alg.push_forward(f, &t) {
                        // tuples outside a listed basis are degenerate
                        if let Some(r) = target.index_of(&u) {
                            acc.add(r, if i % 2 == 0 { x } else { -x });
                        }
                    }
                }
                acc.finish()
            })
            .collect();
        differentials.push(RatMatrix::from_columns(target.len(), columns)?);
    }
    let dims = bases.iter().map(DegreeBasis::len).collect();
    let complex = ChainComplex::new(Grading::Homological, dims, differentials)?;
    Ok(BuiltComplex { complex, bases, alg })
}

impl BuiltComplex {
    /// Multiplication by the basis element `a` on the basepoint factor, in
    /// degree `n`. This is the `A`-module structure coming from the
    /// basepoint inclusion; it preserves the degenerate subcomplex.
    pub fn basepoint_action(&self, basepoint: usize, n: usize, a: u32) -> RatMatrix {
        let basis = &self.bases[n];
        let columns = (0..basis.len())
            .map(|c| {
                let mut t = basis.tuple(c);
                let b = t[basepoint];
                let mut acc = SparseAccumulator::new();
                for (k, x) in &self.alg.mult[a as usize][b as usize] {
                    t[basepoint] = *k as u32;
                    if let Some(r) = basis.index_of(&t) {
                        acc.add(r, x.clone());
                    }
                }
                acc.finish()
            })
            .collect();
        RatMatrix::from_columns(basis.len(), columns).expect("indices in range")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat;

    #[test]
    fn fold_multiplies() {
        let a = FactorAlgebra::from_fd(&FDAlgebra::truncated_poly(2));
        let fold = fibers(&[0, 0], 1);
        assert!(a.push_forward(&fold, &[1, 1]).is_empty());
        assert_eq!(a.push_forward(&fold, &[0, 1]), vec![(vec![1], rat(1))]);
    }

    #[test]
    fn empty_fibres_get_the_unit() {
        let q2 = FDAlgebra::product(&FDAlgebra::ground_field(), &FDAlgebra::ground_field());
        let a = FactorAlgebra::from_fd(&q2);
        let incl = fibers(&[0], 2);
        assert_eq!(
            a.push_forward(&incl, &[1]),
            vec![(vec![1, 0], rat(1)), (vec![1, 1], rat(1))]
        );
    }

    #[test]
    fn full_basis_indexing() {
        let b = DegreeBasis::full(3, 2, 100, 0).unwrap();
        assert_eq!(b.len(), 9);
        assert_eq!(b.index_of(&[2, 1]), Some(7));
        assert_eq!(b.tuple(7), vec![2, 1]);
        assert!(DegreeBasis::full(3, 5, 100, 0).is_err());
    }
}
