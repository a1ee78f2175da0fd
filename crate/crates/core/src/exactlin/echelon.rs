//! Fraction-free incremental row echelon forms over the integers.
//!
//! Rows are kept primitive (content 1, positive leading coefficient) so that
//! coefficient growth stays bounded on the 0/±1 matrices produced by
//! simplicial differentials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Rat, SparseVec};

/// Sparse integer row, sorted by column, no zero entries.
pub type IntRow = Vec<(usize, BigInt)>;

const NO_PIVOT: u32 = u32::MAX;

/// Clears denominators and returns the primitive integer row spanning the
/// same line as `v`.
pub fn int_row(v: &[(usize, Rat)]) -> IntRow {
    if v.is_empty() {
        return Vec::new();
    }
    let mut lcm = BigInt::one();
    for (_, x) in v {
        lcm = lcm.lcm(x.denom());
    }
    let mut row: IntRow = v
        .iter()
        .map(|(c, x)| (*c, x.numer() * (&lcm / x.denom())))
        .collect();
    make_primitive(&mut row);
    row
}

/// Divides out the content and makes the leading coefficient positive.
pub fn make_primitive(row: &mut IntRow) {
    let Some(first) = row.first() else { return };
    let mut g = first.1.abs();
    for (_, x) in row.iter().skip(1) {
        if g.is_one() {
            break;
        }
        g = g.gcd(x);
    }
    let negate = first.1.is_negative();
    if g.is_one() && !negate {
        return;
    }
    for (_, x) in row.iter_mut() {
        if !g.is_one() {
            *x = &*x / &g;
        }
        if negate {
            *x = -&*x;
        }
    }
}

/// Returns `a * row - b * other`, dropping cancelled entries.
fn combine(a: &BigInt, row: &IntRow, b: &BigInt, other: &IntRow) -> IntRow {
    let mut out = Vec::with_capacity(row.len() + other.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < other.len() {
        let take_left = j >= other.len() || (i < row.len() && row[i].0 < other[j].0);
        let take_right = i >= row.len() || (j < other.len() && other[j].0 < row[i].0);
        if take_left {
            out.push((row[i].0, a * &row[i].1));
            i += 1;
        } else if take_right {
            out.push((other[j].0, -(b * &other[j].1)));
            j += 1;
        } else {
            let x = a * &row[i].1 - b * &other[j].1;
            if !x.is_zero() {
                out.push((row[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Eliminates column `col` of `row` using `pivot_row`, whose entry at `col`
/// is `pv`.
fn eliminate(row: &IntRow, col: usize, pivot_row: &IntRow, pv: &BigInt) -> IntRow {
    let entry = match row.binary_search_by_key(&col, |e| e.0) {
        Ok(k) => &row[k].1,
        Err(_) => return row.clone(),
    };
    let g = pv.gcd(entry);
    let mut out = combine(&(pv / &g), row, &(entry / &g), pivot_row);
    make_primitive(&mut out);
    out
}

/// Incremental semi-echelon basis: every stored row has a distinct leading
/// column. Vectors are inserted in caller order; the first vector whose
/// reduction leads at a column claims it.
#[derive(Clone, Debug)]
pub struct Echelon {
    width: usize,
    rows: Vec<IntRow>,
    pivot_row: Vec<u32>,
}

impl Echelon {
    pub fn new(width: usize) -> Self {
        Echelon {
            width,
            rows: Vec::new(),
            pivot_row: vec![NO_PIVOT; width],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[IntRow] {
        &self.rows
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r[0].0)
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row[col] != NO_PIVOT
    }

    /// Reduces leading entries until the leading column is free (or the row
    /// vanishes).
    pub fn reduce(&self, mut row: IntRow) -> IntRow {
        while let Some((lead, _)) = row.first() {
            let k = self.pivot_row[*lead];
            if k == NO_PIVOT {
                break;
            }
            let p = &self.rows[k as usize];
            row = eliminate(&row, *lead, p, &p[0].1);
        }
        row
    }

    /// Inserts a row; returns its pivot column if it was independent.
    pub fn insert(&mut self, row: IntRow) -> Option<usize> {
        debug_assert!(row.iter().all(|(c, _)| *c < self.width));
        let row = self.reduce(row);
        let lead = row.first()?.0;
        self.pivot_row[lead] = self.rows.len() as u32;
        self.rows.push(row);
        Some(lead)
    }

    pub fn insert_rat(&mut self, v: &[(usize, Rat)]) -> Option<usize> {
        self.insert(int_row(v))
    }

    pub fn contains_rat(&self, v: &[(usize, Rat)]) -> bool {
        self.reduce(int_row(v)).is_empty()
    }

    /// Clears every pivot column of `v`, working over the rationals so the
    /// result is the exact remainder (not a rescaled one).
    pub fn reduce_full_rat(&self, v: &[(usize, Rat)]) -> SparseVec {
        let mut cur: SparseVec = v.to_vec();
        let mut idx = 0;
        while idx < cur.len() {
            let (col, ref coef) = cur[idx];
            let k = self.pivot_row[col];
            if k == NO_PIVOT {
                idx += 1;
                continue;
            }
            let p = &self.rows[k as usize];
            let factor = coef / Rat::from_integer(p[0].1.clone());
            let mut next: SparseVec = Vec::with_capacity(cur.len() + p.len());
            next.extend_from_slice(&cur[..idx]);
            let (mut i, mut j) = (idx, 0);
            while i < cur.len() || j < p.len() {
                if j >= p.len() || (i < cur.len() && cur[i].0 < p[j].0) {
                    next.push(cur[i].clone());
                    i += 1;
                } else if i >= cur.len() || p[j].0 < cur[i].0 {
                    next.push((p[j].0, -(&factor * Rat::from_integer(p[j].1.clone()))));
                    j += 1;
                } else {
                    let x = &cur[i].1 - &factor * Rat::from_integer(p[j].1.clone());
                    if !x.is_zero() {
                        next.push((cur[i].0, x));
                    }
                    i += 1;
                    j += 1;
                }
            }
            cur = next;
        }
        cur
    }

    /// Converts to reduced row echelon form: every pivot column is zero
    /// outside its own row. Rows come back sorted by pivot column.
    pub fn into_rref(mut self) -> Vec<IntRow> {
        self.rows.sort_by_key(|r| r[0].0);
        let n = self.rows.len();
        for k in (0..n).rev() {
            let (head, tail) = self.rows.split_at_mut(k);
            let pivot = &tail[0];
            let col = pivot[0].0;
            let pv = &pivot[0].1;
            for row in head.iter_mut() {
                if row.binary_search_by_key(&col, |e| e.0).is_ok() {
                    *row = eliminate(row, col, pivot, pv);
                }
            }
        }
        self.rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[(usize, i64)]) -> IntRow {
        v.iter().map(|(c, x)| (*c, BigInt::from(*x))).collect()
    }

    #[test]
    fn primitive_rows_have_positive_lead() {
        let mut r = ints(&[(1, -4), (3, 6)]);
        make_primitive(&mut r);
        assert_eq!(r, ints(&[(1, 2), (3, -3)]));
    }

    #[test]
    fn dependent_rows_are_rejected() {
        let mut e = Echelon::new(3);
        assert_eq!(e.insert(ints(&[(0, 1), (1, 2)])), Some(0));
        assert_eq!(e.insert(ints(&[(0, 2), (1, 4)])), None);
        assert_eq!(e.insert(ints(&[(1, 1), (2, 1)])), Some(1));
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn rref_clears_pivot_columns() {
        let mut e = Echelon::new(3);
        e.insert(ints(&[(0, 1), (1, 1), (2, 1)]));
        e.insert(ints(&[(1, 1), (2, 2)]));
        let rows = e.into_rref();
        assert_eq!(rows[0], ints(&[(0, 1), (2, -1)]));
        assert_eq!(rows[1], ints(&[(1, 1), (2, 2)]));
    }
}
