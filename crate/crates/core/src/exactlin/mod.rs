//! Exact sparse linear algebra over the rationals.
//!
//! Everything downstream (differentials, module actions, resolutions)
//! reduces to rank, kernel and image computations here. Values are
//! immutable once built; every operation returns a fresh value.

mod complex;
pub mod echelon;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

pub use complex::{alternating_sum, quotient_complex, ChainComplex, Grading};
pub use echelon::Echelon;

/// An exact rational number in canonical form (positive denominator, reduced).
pub type Rat = num_rational::BigRational;

/// Sparse vector: `(index, value)` pairs sorted by index with no zero values.
pub type SparseVec = Vec<(usize, Rat)>;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("composition of consecutive maps is nonzero (malformed complex)")]
    CompositionNonzero,
    #[error("differential at degree {degree} does not map the subspace into the next one")]
    NotASubcomplex { degree: usize },
    #[error("d∘d ≠ 0 at degree {degree}")]
    NotAComplex { degree: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
}

/// Sorts, merges duplicate indices and drops zeros.
pub fn normalize(mut v: Vec<(usize, Rat)>) -> SparseVec {
    v.sort_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y += x,
            _ => out.push((i, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}

/// Accumulator for building sparse vectors from many contributions.
#[derive(Default, Debug)]
pub struct SparseAccumulator {
    entries: HashMap<usize, Rat>,
}

impl SparseAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, index: usize, value: Rat) {
        if value.is_zero() {
            return;
        }
        let slot = self.entries.entry(index).or_insert_with(Rat::zero);
        *slot += value;
    }

    pub fn finish(self) -> SparseVec {
        let mut v: SparseVec = self
            .entries
            .into_iter()
            .filter(|(_, x)| !x.is_zero())
            .collect();
        v.sort_by_key(|e| e.0);
        v
    }
}

pub fn scale(v: &[(usize, Rat)], s: &Rat) -> SparseVec {
    if s.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, x * s)).collect()
}

pub fn add_scaled(a: &[(usize, Rat)], b: &[(usize, Rat)], s: &Rat) -> SparseVec {
    let mut all: Vec<(usize, Rat)> = a.to_vec();
    all.extend(b.iter().map(|(i, x)| (*i, x * s)));
    normalize(all)
}

/// Sparse rational matrix stored by columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        RatMatrix {
            rows: n,
            cols: n,
            columns: (0..n).map(|i| vec![(i, Rat::one())]).collect(),
        }
    }

    /// Builds a matrix from its columns. Entries are normalized; out of
    /// range row indices are a shape error.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, Rat)>>) -> Result<Self, LinalgError> {
        let cols = columns.len();
        let columns: Vec<SparseVec> = columns.into_iter().map(normalize).collect();
        for c in &columns {
            if let Some((r, _)) = c.last() {
                if *r >= rows {
                    return Err(LinalgError::Shape(format!("row index {r} ≥ {rows}")));
                }
            }
        }
        Ok(RatMatrix { rows, cols, columns })
    }

    pub(crate) fn from_normalized_columns(rows: usize, columns: Vec<SparseVec>) -> Self {
        debug_assert!(columns
            .iter()
            .all(|c| c.windows(2).all(|w| w[0].0 < w[1].0) && c.last().is_none_or(|e| e.0 < rows)));
        RatMatrix {
            rows,
            cols: columns.len(),
            columns,
        }
    }

    pub fn from_triplets(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, Rat)>,
    ) -> Result<Self, LinalgError> {
        let mut columns = vec![Vec::new(); cols];
        for (r, c, x) in entries {
            if c >= cols {
                return Err(LinalgError::Shape(format!("column index {c} ≥ {cols}")));
            }
            columns[c].push((r, x));
        }
        Self::from_columns(rows, columns)
    }

    /// Dense integer literal, row-major. Handy in tests and presets.
    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let entries = rows.iter().enumerate().flat_map(|(r, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, x)| **x != 0)
                .map(move |(c, x)| (r, c, rat(*x)))
        });
        Self::from_triplets(nrows, ncols, entries).expect("literal matrix in range")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, c: usize) -> &[(usize, Rat)] {
        &self.columns[c]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> Rat {
        match self.columns[c].binary_search_by_key(&r, |e| e.0) {
            Ok(k) => self.columns[c][k].1.clone(),
            Err(_) => Rat::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut columns = vec![Vec::new(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, x) in col {
                columns[*r].push((c, x.clone()));
            }
        }
        RatMatrix::from_normalized_columns(self.cols, columns)
    }

    pub fn apply(&self, v: &[(usize, Rat)]) -> SparseVec {
        let mut acc = SparseAccumulator::new();
        for (c, x) in v {
            for (r, y) in &self.columns[*c] {
                acc.add(*r, x * y);
            }
        }
        acc.finish()
    }

    /// Matrix product `self · other`.
    ///
    /// Panics if the inner dimensions disagree.
    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions of a product must agree");
        let columns = other.columns.iter().map(|c| self.apply(c)).collect();
        RatMatrix::from_normalized_columns(self.rows, columns)
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| add_scaled(a, b, &Rat::one()))
            .collect();
        RatMatrix::from_normalized_columns(self.rows, columns)
    }

    pub fn scaled(&self, s: &Rat) -> RatMatrix {
        let columns = self.columns.iter().map(|c| scale(c, s)).collect();
        RatMatrix::from_normalized_columns(self.rows, columns)
    }

    pub fn pow(&self, k: usize) -> RatMatrix {
        assert_eq!(self.rows, self.cols);
        let mut acc = RatMatrix::identity(self.rows);
        for _ in 0..k {
            acc = self.mul(&acc);
        }
        acc
    }

    pub fn row_vectors(&self) -> Vec<SparseVec> {
        self.transpose().columns
    }

    pub fn to_dense(&self) -> Vec<Vec<Rat>> {
        let mut out = vec![vec![Rat::zero(); self.cols]; self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, x) in col {
                out[*r][c] = x.clone();
            }
        }
        out
    }

    pub fn trace(&self) -> Rat {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }
}

/// A linearly independent list of vectors in a fixed ambient space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<SparseVec>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: (0..ambient_dim).map(|i| vec![(i, Rat::one())]).collect(),
        }
    }

    /// Keeps the vectors of `spanning` that are independent of their
    /// predecessors.
    pub fn spanned_by(ambient_dim: usize, spanning: impl IntoIterator<Item = SparseVec>) -> Self {
        let mut ech = Echelon::new(ambient_dim);
        let basis = spanning
            .into_iter()
            .filter(|v| ech.insert_rat(v).is_some())
            .collect();
        Subspace { ambient_dim, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.ambient_dim);
        for v in &self.basis {
            e.insert_rat(v);
        }
        e
    }

    pub fn contains(&self, v: &[(usize, Rat)]) -> bool {
        self.echelon().contains_rat(v)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        let e = other.echelon();
        self.basis.iter().all(|v| e.contains_rat(v))
    }
}

fn echelon_of_columns(m: &RatMatrix) -> Echelon {
    let mut e = Echelon::new(m.rows);
    for c in &m.columns {
        e.insert_rat(c);
    }
    e
}

/// Exact rank over the rationals. Eliminates along the shorter side and
/// stops as soon as the rank is full.
pub fn rank(m: &RatMatrix) -> usize {
    let (width, vectors): (usize, Box<dyn Iterator<Item = SparseVec>>) = if m.rows <= m.cols {
        (m.rows, Box::new(m.columns.iter().cloned()))
    } else {
        (m.cols, Box::new(m.row_vectors().into_iter()))
    };
    let mut e = Echelon::new(width);
    for v in vectors {
        if e.rank() == width {
            break;
        }
        e.insert_rat(&v);
    }
    e.rank()
}

/// Null space basis, one vector per free column (ascending), normalized so
/// the free coordinate is 1.
pub fn kernel_basis(m: &RatMatrix) -> Subspace {
    let mut e = Echelon::new(m.cols);
    for r in m.row_vectors() {
        e.insert_rat(&r);
    }
    let rref = e.into_rref();
    let mut is_pivot = vec![false; m.cols];
    for r in &rref {
        is_pivot[r[0].0] = true;
    }
    let mut by_free: HashMap<usize, Vec<(usize, Rat)>> = HashMap::new();
    for row in &rref {
        let (pc, pv) = (&row[0].0, &row[0].1);
        for (c, x) in row.iter().skip(1) {
            by_free
                .entry(*c)
                .or_default()
                .push((*pc, -Rat::new(x.clone(), pv.clone())));
        }
    }
    let basis = (0..m.cols)
        .filter(|c| !is_pivot[*c])
        .map(|f| {
            let mut v = by_free.remove(&f).unwrap_or_default();
            v.push((f, Rat::one()));
            v.sort_by_key(|e| e.0);
            v
        })
        .collect();
    Subspace {
        ambient_dim: m.cols,
        basis,
    }
}

/// Column space basis: the columns of `m` that are independent of earlier
/// columns.
pub fn image_basis(m: &RatMatrix) -> Subspace {
    Subspace::spanned_by(m.rows, m.columns.iter().cloned())
}

/// Homology at the middle of `· --d_in--> V --d_out--> ·`.
///
/// Returns the dimension and coset representatives: kernel vectors of
/// `d_out` spanning a complement of the image of `d_in`.
pub fn subquotient_homology(
    d_in: &RatMatrix,
    d_out: &RatMatrix,
) -> Result<(usize, Vec<SparseVec>), LinalgError> {
    if d_in.rows != d_out.cols {
        return Err(LinalgError::Shape(format!(
            "d_in targets dimension {} but d_out starts at {}",
            d_in.rows, d_out.cols
        )));
    }
    if !d_out.mul(d_in).is_zero() {
        return Err(LinalgError::CompositionNonzero);
    }
    let kernel = kernel_basis(d_out);
    let mut e = echelon_of_columns(d_in);
    let reps: Vec<SparseVec> = kernel
        .basis
        .into_iter()
        .filter(|v| e.insert_rat(v).is_some())
        .collect();
    Ok((reps.len(), reps))
}

/// Dimension-only homology: `nullity(d_out) − rank(d_in)`. Does not check
/// `d_out·d_in = 0`.
pub fn homology_dim(d_in: &RatMatrix, d_out: &RatMatrix) -> usize {
    d_out.cols - rank(d_out) - rank(d_in)
}

/// Expresses vectors in terms of a fixed independent list.
#[derive(Debug, Clone)]
pub struct SpanSolver {
    width: usize,
    count: usize,
    echelon: Echelon,
}

impl SpanSolver {
    /// Panics if `vectors` are dependent.
    pub fn new(width: usize, vectors: &[SparseVec]) -> Self {
        let count = vectors.len();
        let mut echelon = Echelon::new(width + count);
        for (k, v) in vectors.iter().enumerate() {
            let mut tagged = v.clone();
            tagged.push((width + k, Rat::one()));
            let pivot = echelon.insert_rat(&tagged);
            assert!(
                matches!(pivot, Some(p) if p < width),
                "SpanSolver needs independent vectors"
            );
        }
        SpanSolver {
            width,
            count,
            echelon,
        }
    }

    /// Coordinates of `v` in the fixed list, or `None` if `v` is outside
    /// their span.
    pub fn solve(&self, v: &[(usize, Rat)]) -> Option<Vec<Rat>> {
        let rem = self.echelon.reduce_full_rat(v);
        if rem.iter().any(|(c, _)| *c < self.width) {
            return None;
        }
        let mut coords = vec![Rat::zero(); self.count];
        for (c, x) in rem {
            coords[c - self.width] = -x;
        }
        Some(coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&RatMatrix::identity(3)), 3);
        assert_eq!(rank(&RatMatrix::zeros(4, 2)), 0);
        assert_eq!(rank(&RatMatrix::from_rows_i64(&[vec![1, 2], vec![2, 4]])), 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&RatMatrix::identity(2)).dim(), 0);
        assert_eq!(kernel_basis(&RatMatrix::zeros(1, 3)).dim(), 3);
        let k = kernel_basis(&RatMatrix::from_rows_i64(&[vec![1, 1]]));
        assert_eq!(k.basis(), &[vec![(0, rat(-1)), (1, rat(1))]]);
    }

    #[test]
    fn kernel_vectors_are_annihilated_with_fractions() {
        let m = RatMatrix::from_rows_i64(&[vec![2, 3, 5, 0], vec![4, 1, 0, 7]]);
        let k = kernel_basis(&m);
        assert_eq!(k.dim(), 2);
        for v in k.basis() {
            assert!(m.apply(v).is_empty());
        }
    }

    #[test]
    fn image_examples() {
        assert_eq!(image_basis(&RatMatrix::identity(3)).dim(), 3);
        assert_eq!(image_basis(&RatMatrix::zeros(3, 2)).dim(), 0);
        let im = image_basis(&RatMatrix::from_rows_i64(&[vec![1], vec![2]]));
        assert_eq!(im.basis(), &[vec![(0, rat(1)), (1, rat(2))]]);
    }

    #[test]
    fn subquotient_examples() {
        let z = RatMatrix::zeros(1, 1);
        assert_eq!(subquotient_homology(&z, &z).unwrap().0, 1);
        assert_eq!(subquotient_homology(&RatMatrix::identity(1), &z).unwrap().0, 0);
        assert_eq!(subquotient_homology(&z, &RatMatrix::identity(1)).unwrap().0, 0);
        assert_eq!(
            subquotient_homology(&RatMatrix::identity(1), &RatMatrix::identity(1)),
            Err(LinalgError::CompositionNonzero)
        );
    }

    #[test]
    fn span_solver_recovers_coordinates() {
        let vs = vec![vec![(0, rat(1)), (1, rat(1))], vec![(1, rat(2))]];
        let s = SpanSolver::new(2, &vs);
        assert_eq!(s.solve(&[(0, rat(3)), (1, rat(7))]), Some(vec![rat(3), ratio(2, 1)]));
        let s1 = SpanSolver::new(3, &vs);
        assert_eq!(s1.solve(&[(2, rat(1))]), None);
    }
}
