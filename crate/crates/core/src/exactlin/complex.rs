use num_traits::One;

use super::{
    homology_dim, rank, subquotient_homology, LinalgError, RatMatrix, SparseVec, Subspace,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Grading {
    /// `d_n : C_n → C_{n−1}`
    Homological,
    /// `δ_n : C^n → C^{n+1}`
    Cohomological,
}

/// A bounded complex in degrees `0..=top` with exact differentials.
///
/// For a homological complex `differentials[n]` is `d_n : C_n → C_{n−1}`
/// (so `differentials[0]` has zero rows). For a cohomological one it is
/// `δ_n : C^n → C^{n+1}` and `differentials[top]` has zero rows. The map
/// arriving at the top (resp. bottom) degree from outside the range is
/// treated as zero, which is why homology in the last degree is not
/// certified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    grading: Grading,
    dims: Vec<usize>,
    differentials: Vec<RatMatrix>,
}

impl ChainComplex {
    /// Validates shapes and `d∘d = 0`.
    pub fn new(
        grading: Grading,
        dims: Vec<usize>,
        differentials: Vec<RatMatrix>,
    ) -> Result<Self, LinalgError> {
        let c = ChainComplex {
            grading,
            dims,
            differentials,
        };
        c.check_shapes()?;
        c.check_square_zero()?;
        Ok(c)
    }

    fn check_shapes(&self) -> Result<(), LinalgError> {
        if self.dims.is_empty() || self.dims.len() != self.differentials.len() {
            return Err(LinalgError::Shape(
                "one differential per degree is required".into(),
            ));
        }
        let top = self.top_degree();
        for (n, d) in self.differentials.iter().enumerate() {
            let target = match self.grading {
                Grading::Homological if n == 0 => 0,
                Grading::Homological => self.dims[n - 1],
                Grading::Cohomological if n == top => 0,
                Grading::Cohomological => self.dims[n + 1],
            };
            if d.cols() != self.dims[n] || d.rows() != target {
                return Err(LinalgError::Shape(format!(
                    "differential in degree {n} is {}×{}, expected {target}×{}",
                    d.rows(),
                    d.cols(),
                    self.dims[n]
                )));
            }
        }
        Ok(())
    }

    /// Recomputes every composite of consecutive differentials.
    pub fn check_square_zero(&self) -> Result<(), LinalgError> {
        for n in 0..self.dims.len() {
            if let Some(next) = self.incoming(n) {
                if !self.outgoing(n).mul(next).is_zero() {
                    return Err(LinalgError::NotAComplex { degree: n });
                }
            }
        }
        Ok(())
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn top_degree(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn differentials(&self) -> &[RatMatrix] {
        &self.differentials
    }

    /// The map leaving degree `n`.
    pub fn outgoing(&self, n: usize) -> &RatMatrix {
        &self.differentials[n]
    }

    /// The map arriving in degree `n`, if it lies inside the stored range.
    pub fn incoming(&self, n: usize) -> Option<&RatMatrix> {
        match self.grading {
            Grading::Homological => self.differentials.get(n + 1),
            Grading::Cohomological => n.checked_sub(1).map(|m| &self.differentials[m]),
        }
    }

    fn incoming_or_zero(&self, n: usize) -> RatMatrix {
        self.incoming(n)
            .cloned()
            .unwrap_or_else(|| RatMatrix::zeros(self.dims[n], 0))
    }

    /// Whether both differentials at degree `n` are genuine. The top degree
    /// is missing one of them (incoming for chains, outgoing for cochains).
    pub fn is_certified(&self, n: usize) -> bool {
        n < self.top_degree()
    }

    pub fn homology_dim(&self, n: usize) -> usize {
        match self.incoming(n) {
            Some(d_in) => homology_dim(d_in, self.outgoing(n)),
            None => self.dims[n] - rank(self.outgoing(n)),
        }
    }

    /// Homology dimensions in every stored degree, sharing the rank of each
    /// differential between its two neighbours.
    pub fn homology_dims(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.differentials.iter().map(rank).collect();
        (0..self.dims.len())
            .map(|n| {
                let incoming = match self.grading {
                    Grading::Homological => ranks.get(n + 1).copied().unwrap_or(0),
                    Grading::Cohomological => n.checked_sub(1).map_or(0, |m| ranks[m]),
                };
                self.dims[n] - ranks[n] - incoming
            })
            .collect()
    }

    /// Homology in degree `n` with cycle representatives.
    pub fn homology_with_representatives(
        &self,
        n: usize,
    ) -> Result<(usize, Vec<SparseVec>), LinalgError> {
        subquotient_homology(&self.incoming_or_zero(n), self.outgoing(n))
    }

    pub fn euler_characteristic(&self) -> i64 {
        alternating_sum(&self.dims)
    }
}

pub fn alternating_sum(xs: &[usize]) -> i64 {
    xs.iter()
        .enumerate()
        .map(|(n, x)| if n % 2 == 0 { *x as i64 } else { -(*x as i64) })
        .sum()
}

/// The complex of quotients `C_n / sub_n` with induced differentials.
///
/// The quotient basis in each degree is the set of coordinate vectors that
/// are not pivots of `sub_n`'s echelon form, in ascending order.
pub fn quotient_complex(c: &ChainComplex, sub: &[Subspace]) -> Result<ChainComplex, LinalgError> {
    if sub.len() != c.dims.len() || sub.iter().zip(&c.dims).any(|(s, d)| s.ambient_dim() != *d) {
        return Err(LinalgError::Shape(
            "one subspace per degree, in the ambient space of that degree".into(),
        ));
    }
    let echelons: Vec<_> = sub.iter().map(Subspace::echelon).collect();
    let complements: Vec<Vec<usize>> = echelons
        .iter()
        .zip(&c.dims)
        .map(|(e, d)| (0..*d).filter(|i| !e.is_pivot(*i)).collect())
        .collect();
    let positions: Vec<Vec<Option<usize>>> = complements
        .iter()
        .zip(&c.dims)
        .map(|(comp, d)| {
            let mut pos = vec![None; *d];
            for (k, i) in comp.iter().enumerate() {
                pos[*i] = Some(k);
            }
            pos
        })
        .collect();
    let target_of = |n: usize| -> Option<usize> {
        match c.grading {
            Grading::Homological => n.checked_sub(1),
            Grading::Cohomological => (n < c.top_degree()).then_some(n + 1),
        }
    };
    let mut differentials = Vec::with_capacity(c.dims.len());
    for n in 0..c.dims.len() {
        let d = c.outgoing(n);
        let Some(t) = target_of(n) else {
            differentials.push(RatMatrix::zeros(0, complements[n].len()));
            continue;
        };
        for v in sub[n].basis() {
            let image = d.apply(v);
            if !echelons[t].contains_rat(&image) {
                return Err(LinalgError::NotASubcomplex { degree: n });
            }
        }
        let columns = complements[n]
            .iter()
            .map(|i| {
                let image = d.apply(&[(*i, super::Rat::one())]);
                echelons[t]
                    .reduce_full_rat(&image)
                    .into_iter()
                    .map(|(r, x)| (positions[t][r].expect("reduced vectors avoid pivots"), x))
                    .collect()
            })
            .collect();
        differentials.push(RatMatrix::from_columns(complements[t].len(), columns)?);
    }
    ChainComplex::new(
        c.grading,
        complements.iter().map(Vec::len).collect(),
        differentials,
    )
}
