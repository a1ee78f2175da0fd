//! Finite pointed simplicial sets, truncated at a level bound.
//!
//! Simplices are opaque indices into each level. Face and degeneracy maps
//! are stored as lookup tables; degeneracies are defined on levels below
//! the truncation bound. Constructors that come from the standard simplex
//! label each simplex by its monotone sequence `[n] → [d]`, which keeps ids
//! deterministic.

mod expr;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

pub use expr::SpaceExpr;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimplicialError {
    #[error("truncation levels differ ({0} vs {1})")]
    TruncationMismatch(usize, usize),
    #[error("skeleton dimension {requested} exceeds truncation {trunc}")]
    AboveTruncation { requested: usize, trunc: usize },
    #[error("{0} requires dimension ≥ 1")]
    DimensionTooSmall(&'static str),
    #[error("cannot parse space expression: {0}")]
    Parse(String),
}

/// A finite pointed simplicial set truncated at level `trunc_level`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinSimpSet {
    name: String,
    labels: Vec<Vec<String>>,
    /// `faces[n][i][x]` for `1 ≤ n`, `0 ≤ i ≤ n`.
    faces: Vec<Vec<Vec<u32>>>,
    /// `degens[n][i][x]` for `n < trunc`, `0 ≤ i ≤ n`.
    degens: Vec<Vec<Vec<u32>>>,
    basepoint: u32,
}

/// Per level, whether each simplex is outside the image of every degeneracy.
pub type NondegTable = Vec<Vec<bool>>;

/// First violated identity found by [`FinSimpSet::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub identity: String,
    pub level: usize,
    pub simplex: usize,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} fails on simplex {} at level {}",
            self.identity, self.simplex, self.level
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Keep {
    Yes,
    Collapse,
    Drop,
}

fn monotone_sequences(len: usize, max: u8) -> Vec<Vec<u8>> {
    fn go(prefix: &mut Vec<u8>, len: usize, max: u8, out: &mut Vec<Vec<u8>>) {
        if prefix.len() == len {
            out.push(prefix.clone());
            return;
        }
        let start = prefix.last().copied().unwrap_or(0);
        for v in start..=max {
            prefix.push(v);
            go(prefix, len, max, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(len), len, max, &mut out);
    out
}

fn is_surjective(seq: &[u8], d: u8) -> bool {
    seq.first() == Some(&0) && seq.last() == Some(&d) && seq.windows(2).all(|w| w[1] - w[0] <= 1)
}

fn seq_label(seq: &[u8]) -> String {
    seq.iter().map(|v| char::from(b'0' + v)).collect()
}

impl FinSimpSet {
    /// Assembles a simplicial set from raw tables without checking the
    /// simplicial identities; see [`FinSimpSet::validate`].
    pub fn from_tables(
        name: impl Into<String>,
        labels: Vec<Vec<String>>,
        faces: Vec<Vec<Vec<u32>>>,
        degens: Vec<Vec<Vec<u32>>>,
        basepoint: u32,
    ) -> Self {
        FinSimpSet {
            name: name.into(),
            labels,
            faces,
            degens,
            basepoint,
        }
    }

    /// Builds a simplicial subset or quotient of `Δ^d` from a classification
    /// of monotone sequences. Collapsed sequences become the distinguished
    /// simplex `*` (index 0 of every level).
    fn from_monotone(name: String, d: usize, trunc: usize, classify: impl Fn(&[u8]) -> Keep, basepoint: &[u8]) -> Self {
        let d8 = d as u8;
        let collapsing = (0..=trunc).any(|n| {
            monotone_sequences(n + 1, d8)
                .iter()
                .any(|s| classify(s) == Keep::Collapse)
        });
        let mut levels: Vec<Vec<Vec<u8>>> = Vec::with_capacity(trunc + 1);
        let mut index: Vec<HashMap<Vec<u8>, u32>> = Vec::with_capacity(trunc + 1);
        for n in 0..=trunc {
            let kept: Vec<Vec<u8>> = monotone_sequences(n + 1, d8)
                .into_iter()
                .filter(|s| classify(s) == Keep::Yes)
                .collect();
            let offset = u32::from(collapsing);
            index.push(
                kept.iter()
                    .enumerate()
                    .map(|(k, s)| (s.clone(), k as u32 + offset))
                    .collect(),
            );
            levels.push(kept);
        }
        let lookup = |n: usize, s: &[u8]| -> u32 {
            match classify(s) {
                Keep::Yes => index[n][s],
                Keep::Collapse => 0,
                Keep::Drop => panic!("face or degeneracy left the simplicial subset"),
            }
        };
        let labels = levels
            .iter()
            .map(|lv| {
                let mut l: Vec<String> = Vec::new();
                if collapsing {
                    l.push("*".into());
                }
                l.extend(lv.iter().map(|s| seq_label(s)));
                l
            })
            .collect();
        // `*` sits at index 0 and every structure map fixes it
        let star = || -> Vec<u32> { if collapsing { vec![0] } else { Vec::new() } };
        let mut faces = vec![Vec::new()];
        for n in 1..=trunc {
            let maps = (0..=n)
                .map(|i| {
                    let mut m = star();
                    m.extend(levels[n].iter().map(|s| {
                        let mut t = s.clone();
                        t.remove(i);
                        lookup(n - 1, &t)
                    }));
                    m
                })
                .collect();
            faces.push(maps);
        }
        let mut degens = Vec::new();
        for n in 0..trunc {
            let maps = (0..=n)
                .map(|i| {
                    let mut m = star();
                    m.extend(levels[n].iter().map(|s| {
                        let mut t = s.clone();
                        t.insert(i, s[i]);
                        lookup(n + 1, &t)
                    }));
                    m
                })
                .collect();
            degens.push(maps);
        }
        let bp = lookup(0, basepoint);
        FinSimpSet {
            name,
            labels,
            faces,
            degens,
            basepoint: bp,
        }
    }

    /// The one-point simplicial set.
    pub fn point(trunc: usize) -> Self {
        let mut k = Self::standard_simplex(0, trunc);
        k.name = "point".into();
        k
    }

    /// `Δ^d`: level `n` is the set of monotone maps `[n] → [d]`.
    pub fn standard_simplex(d: usize, trunc: usize) -> Self {
        Self::from_monotone(format!("simplex({d})"), d, trunc, |_| Keep::Yes, &[0])
    }

    /// `∂Δ^d`: the non-surjective monotone maps.
    pub fn boundary_simplex(d: usize, trunc: usize) -> Result<Self, SimplicialError> {
        if d == 0 {
            return Err(SimplicialError::DimensionTooSmall("boundary"));
        }
        let d8 = d as u8;
        Ok(Self::from_monotone(
            format!("boundary({d})"),
            d,
            trunc,
            move |s| if is_surjective(s, d8) { Keep::Drop } else { Keep::Yes },
            &[0],
        ))
    }

    /// `S^d = Δ^d / ∂Δ^d`: the basepoint `*` plus the monotone surjections
    /// `[n] ↠ [d]`. A face of a surjection that stops being surjective is `*`.
    pub fn sphere(d: usize, trunc: usize) -> Result<Self, SimplicialError> {
        if d == 0 {
            return Err(SimplicialError::DimensionTooSmall("sphere"));
        }
        let d8 = d as u8;
        Ok(Self::from_monotone(
            format!("sphere({d})"),
            d,
            trunc,
            move |s| if is_surjective(s, d8) { Keep::Yes } else { Keep::Collapse },
            &[0],
        ))
    }

    /// `k1 ∨ k2`: disjoint union with the two basepoint chains identified.
    /// The shared basepoint is index 0 at every level.
    pub fn wedge(k1: &FinSimpSet, k2: &FinSimpSet) -> Result<Self, SimplicialError> {
        if k1.trunc_level() != k2.trunc_level() {
            return Err(SimplicialError::TruncationMismatch(k1.trunc_level(), k2.trunc_level()));
        }
        let trunc = k1.trunc_level();
        let bp1 = k1.basepoint_chain();
        let bp2 = k2.basepoint_chain();
        // new index of each old simplex, per side and level
        let mut relabel: [Vec<Vec<u32>>; 2] = [Vec::new(), Vec::new()];
        let mut labels = Vec::with_capacity(trunc + 1);
        for n in 0..=trunc {
            let mut lv = vec!["*".to_string()];
            let mut next = 1u32;
            for (side, (k, bp)) in [(k1, &bp1), (k2, &bp2)].into_iter().enumerate() {
                let tag = if side == 0 { "l" } else { "r" };
                let map: Vec<u32> = (0..k.level_size(n))
                    .map(|x| {
                        if x as u32 == bp[n] {
                            0
                        } else {
                            lv.push(format!("{tag}:{}", k.labels[n][x]));
                            next += 1;
                            next - 1
                        }
                    })
                    .collect();
                relabel[side].push(map);
            }
            labels.push(lv);
        }
        let sizes: Vec<usize> = labels.iter().map(Vec::len).collect();
        let merge = |tables: [&Vec<u32>; 2], from: usize, to: usize| -> Vec<u32> {
            let mut out = vec![0u32; sizes[from]];
            for side in 0..2 {
                for (x, y) in tables[side].iter().enumerate() {
                    out[relabel[side][from][x] as usize] = relabel[side][to][*y as usize];
                }
            }
            out
        };
        let mut faces = vec![Vec::new()];
        for n in 1..=trunc {
            faces.push(
                (0..=n)
                    .map(|i| merge([&k1.faces[n][i], &k2.faces[n][i]], n, n - 1))
                    .collect(),
            );
        }
        let degens = (0..trunc)
            .map(|n| {
                (0..=n)
                    .map(|i| merge([&k1.degens[n][i], &k2.degens[n][i]], n, n + 1))
                    .collect()
            })
            .collect();
        Ok(FinSimpSet {
            name: format!("wedge({},{})", k1.name, k2.name),
            labels,
            faces,
            degens,
            basepoint: 0,
        })
    }

    /// `k1 ⊔ k2`, pointed at the basepoint of `k1`.
    pub fn disjoint_union(k1: &FinSimpSet, k2: &FinSimpSet) -> Result<Self, SimplicialError> {
        if k1.trunc_level() != k2.trunc_level() {
            return Err(SimplicialError::TruncationMismatch(k1.trunc_level(), k2.trunc_level()));
        }
        let trunc = k1.trunc_level();
        let shift = |table: &Vec<u32>, by: usize| -> Vec<u32> {
            table.iter().map(|y| y + by as u32).collect()
        };
        let labels = (0..=trunc)
            .map(|n| {
                k1.labels[n]
                    .iter()
                    .map(|l| format!("l:{l}"))
                    .chain(k2.labels[n].iter().map(|l| format!("r:{l}")))
                    .collect()
            })
            .collect();
        let join = |a: &Vec<u32>, b: &Vec<u32>, target_level: usize| -> Vec<u32> {
            let mut out = a.clone();
            out.extend(shift(b, k1.level_size(target_level)));
            out
        };
        let mut faces = vec![Vec::new()];
        for n in 1..=trunc {
            faces.push(
                (0..=n)
                    .map(|i| join(&k1.faces[n][i], &k2.faces[n][i], n - 1))
                    .collect(),
            );
        }
        let degens = (0..trunc)
            .map(|n| {
                (0..=n)
                    .map(|i| join(&k1.degens[n][i], &k2.degens[n][i], n + 1))
                    .collect()
            })
            .collect();
        Ok(FinSimpSet {
            name: format!("disjoint({},{})", k1.name, k2.name),
            labels,
            faces,
            degens,
            basepoint: k1.basepoint,
        })
    }

    /// The simplicial subset generated by nondegenerate simplices of
    /// dimension `≤ n`.
    pub fn skeleton(&self, n: usize) -> Result<Self, SimplicialError> {
        let trunc = self.trunc_level();
        if n > trunc {
            return Err(SimplicialError::AboveTruncation { requested: n, trunc });
        }
        let core = self.core_dimensions();
        let mut relabel: Vec<Vec<Option<u32>>> = Vec::with_capacity(trunc + 1);
        let mut labels = Vec::with_capacity(trunc + 1);
        for m in 0..=trunc {
            let mut next = 0u32;
            let mut lv = Vec::new();
            let map = (0..self.level_size(m))
                .map(|x| {
                    (core[m][x] <= n).then(|| {
                        lv.push(self.labels[m][x].clone());
                        next += 1;
                        next - 1
                    })
                })
                .collect();
            relabel.push(map);
            labels.push(lv);
        }
        let restrict = |table: &Vec<u32>, from: usize, to: usize| -> Vec<u32> {
            table
                .iter()
                .enumerate()
                .filter(|(x, _)| relabel[from][*x].is_some())
                .map(|(_, y)| relabel[to][*y as usize].expect("skeleta are closed under faces and degeneracies"))
                .collect()
        };
        let mut faces = vec![Vec::new()];
        for m in 1..=trunc {
            faces.push((0..=m).map(|i| restrict(&self.faces[m][i], m, m - 1)).collect());
        }
        let degens = (0..trunc)
            .map(|m| (0..=m).map(|i| restrict(&self.degens[m][i], m, m + 1)).collect())
            .collect();
        Ok(FinSimpSet {
            name: format!("skeleton({},{n})", self.name),
            labels,
            faces,
            degens,
            basepoint: relabel[0][self.basepoint as usize].expect("vertices lie in every skeleton"),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn trunc_level(&self) -> usize {
        self.labels.len() - 1
    }

    pub fn level_size(&self, n: usize) -> usize {
        self.labels[n].len()
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    pub fn label(&self, n: usize, x: usize) -> &str {
        &self.labels[n][x]
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint as usize
    }

    /// `d_i : K_n → K_{n−1}` as a table.
    pub fn face_map(&self, n: usize, i: usize) -> &[u32] {
        &self.faces[n][i]
    }

    /// `s_i : K_n → K_{n+1}` as a table, for `n < trunc_level`.
    pub fn degeneracy_map(&self, n: usize, i: usize) -> &[u32] {
        &self.degens[n][i]
    }

    pub fn face(&self, n: usize, i: usize, x: usize) -> usize {
        self.faces[n][i][x] as usize
    }

    pub fn degeneracy(&self, n: usize, i: usize, x: usize) -> usize {
        self.degens[n][i][x] as usize
    }

    /// The iterated degeneracies `s_0^n(basepoint)` for every level.
    pub fn basepoint_chain(&self) -> Vec<u32> {
        let mut chain = vec![self.basepoint];
        for n in 0..self.trunc_level() {
            let prev = chain[n] as usize;
            chain.push(self.degens[n][0][prev]);
        }
        chain
    }

    /// `x ∈ K_n` lies in the image of `s_i` iff `s_i d_i x = x`.
    pub fn in_degeneracy_image(&self, n: usize, i: usize, x: usize) -> bool {
        n >= 1 && self.degeneracy(n - 1, i, self.face(n, i, x)) == x
    }

    pub fn nondegenerate_table(&self) -> NondegTable {
        (0..=self.trunc_level())
            .map(|n| {
                (0..self.level_size(n))
                    .map(|x| (0..n).all(|i| !self.in_degeneracy_image(n, i, x)))
                    .collect()
            })
            .collect()
    }

    pub fn nondegenerate_counts(&self) -> Vec<usize> {
        self.nondegenerate_table()
            .iter()
            .map(|lv| lv.iter().filter(|b| **b).count())
            .collect()
    }

    /// Dimension of the nondegenerate simplex each simplex is a degeneracy of.
    pub fn core_dimensions(&self) -> Vec<Vec<usize>> {
        let mut core: Vec<Vec<usize>> = Vec::with_capacity(self.trunc_level() + 1);
        for n in 0..=self.trunc_level() {
            let lv = (0..self.level_size(n))
                .map(|x| {
                    (0..n)
                        .find(|i| self.in_degeneracy_image(n, *i, x))
                        .map_or(n, |i| core[n - 1][self.face(n, i, x)])
                })
                .collect();
            core.push(lv);
        }
        core
    }

    /// For each simplex of level `n`, the bitmask of indices `i < n` with
    /// `x ∉ image(s_i)`.
    pub fn non_degeneracy_masks(&self, n: usize) -> Vec<u64> {
        assert!(n <= 64, "degeneracy masks are limited to level 64");
        (0..self.level_size(n))
            .map(|x| {
                (0..n)
                    .filter(|i| !self.in_degeneracy_image(n, *i, x))
                    .fold(0u64, |m, i| m | (1 << i))
            })
            .collect()
    }

    /// True iff the graph of vertices and nondegenerate edges is connected.
    pub fn is_connected(&self) -> bool {
        let nv = self.level_size(0);
        if nv == 0 {
            return false;
        }
        let mut parent: Vec<usize> = (0..nv).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        if self.trunc_level() >= 1 {
            for e in 0..self.level_size(1) {
                if self.in_degeneracy_image(1, 0, e) {
                    continue;
                }
                let (a, b) = (find(&mut parent, self.face(1, 0, e)), find(&mut parent, self.face(1, 1, e)));
                parent[a] = b;
            }
        }
        let root = find(&mut parent, 0);
        (0..nv).all(|v| find(&mut parent, v) == root)
    }

    /// Exhaustively checks table shapes, every simplicial identity within
    /// the truncation, and pointedness. Returns the first violation.
    pub fn validate(&self) -> Result<(), Violation> {
        let trunc = self.trunc_level();
        let fail = |identity: String, level: usize, simplex: usize| Violation {
            identity,
            level,
            simplex,
        };
        if self.faces.len() != trunc + 1 || self.degens.len() != trunc {
            return Err(fail("table count".into(), 0, 0));
        }
        for n in 0..=trunc {
            if self.level_size(n) == 0 {
                return Err(fail("nonempty level".into(), n, 0));
            }
            if n >= 1 {
                if self.faces[n].len() != n + 1 {
                    return Err(fail("face count".into(), n, 0));
                }
                for (i, m) in self.faces[n].iter().enumerate() {
                    if m.len() != self.level_size(n) {
                        return Err(fail(format!("d_{i} domain"), n, 0));
                    }
                    if let Some(x) = m.iter().position(|y| *y as usize >= self.level_size(n - 1)) {
                        return Err(fail(format!("d_{i} range"), n, x));
                    }
                }
            }
            if n < trunc {
                if self.degens[n].len() != n + 1 {
                    return Err(fail("degeneracy count".into(), n, 0));
                }
                for (i, m) in self.degens[n].iter().enumerate() {
                    if m.len() != self.level_size(n) {
                        return Err(fail(format!("s_{i} domain"), n, 0));
                    }
                    if let Some(x) = m.iter().position(|y| *y as usize >= self.level_size(n + 1)) {
                        return Err(fail(format!("s_{i} range"), n, x));
                    }
                }
            }
        }
        if self.basepoint as usize >= self.level_size(0) {
            return Err(fail("basepoint is a vertex".into(), 0, self.basepoint as usize));
        }
        let d = |n: usize, i: usize, x: usize| self.face(n, i, x);
        let s = |n: usize, i: usize, x: usize| self.degeneracy(n, i, x);
        for n in 0..=trunc {
            for x in 0..self.level_size(n) {
                // d_i d_j = d_{j-1} d_i, i < j ≤ n
                for j in 1..=n {
                    for i in 0..j {
                        if n >= 2 && d(n - 1, i, d(n, j, x)) != d(n - 1, j - 1, d(n, i, x)) {
                            return Err(fail(format!("d_{i} d_{j} = d_{} d_{i}", j - 1), n, x));
                        }
                    }
                }
                // s_i s_j = s_{j+1} s_i, i ≤ j ≤ n
                if n + 2 <= trunc {
                    for j in 0..=n {
                        for i in 0..=j {
                            if s(n + 1, i, s(n, j, x)) != s(n + 1, j + 1, s(n, i, x)) {
                                return Err(fail(format!("s_{i} s_{j} = s_{} s_{i}", j + 1), n, x));
                            }
                        }
                    }
                }
                // d_i s_j on x ∈ K_n
                if n < trunc {
                    for j in 0..=n {
                        let y = s(n, j, x);
                        for i in 0..=n + 1 {
                            let lhs = d(n + 1, i, y);
                            let (rhs, law) = if i < j {
                                (s(n - 1, j - 1, d(n, i, x)), format!("d_{i} s_{j} = s_{} d_{i}", j - 1))
                            } else if i == j || i == j + 1 {
                                (x, format!("d_{i} s_{j} = id"))
                            } else {
                                (s(n - 1, j, d(n, i - 1, x)), format!("d_{i} s_{j} = s_{j} d_{}", i - 1))
                            };
                            if lhs != rhs {
                                return Err(fail(law, n, x));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn standard_simplex_level_sizes() {
        assert_eq!(FinSimpSet::standard_simplex(0, 3).level_sizes(), vec![1, 1, 1, 1]);
        assert_eq!(FinSimpSet::standard_simplex(1, 2).level_sizes(), vec![2, 3, 4]);
        assert_eq!(FinSimpSet::standard_simplex(2, 2).level_size(2), 10);
    }

    #[test]
    fn boundary_examples() {
        let b1 = FinSimpSet::boundary_simplex(1, 1).unwrap();
        assert_eq!(b1.level_sizes(), vec![2, 2]);
        assert_eq!(b1.nondegenerate_counts(), vec![2, 0]);
        assert!(!b1.is_connected());
        let b2 = FinSimpSet::boundary_simplex(2, 2).unwrap();
        assert_eq!(b2.nondegenerate_counts(), vec![3, 3, 0]);
        assert!(FinSimpSet::boundary_simplex(2, 3).unwrap().is_connected());
        assert!(FinSimpSet::boundary_simplex(3, 4).unwrap().is_connected());
    }

    #[test]
    fn sphere_examples() {
        assert_eq!(FinSimpSet::sphere(1, 3).unwrap().level_sizes(), vec![1, 2, 3, 4]);
        for d in 1..=4 {
            assert_eq!(FinSimpSet::sphere(d, d + 1).unwrap().level_size(d + 1), d + 2);
        }
        assert_eq!(FinSimpSet::sphere(2, 4).unwrap().level_sizes(), vec![1, 1, 2, 4, 7]);
    }

    #[test]
    fn sphere_level_counts_and_nondegenerates() {
        for d in 1..=3 {
            let s = FinSimpSet::sphere(d, 6).unwrap();
            for n in 0..=6 {
                assert_eq!(s.level_size(n), 1 + binom(n, d), "d={d} n={n}");
            }
            let nd = s.nondegenerate_counts();
            let expected: Vec<usize> = (0..=6).map(|n| usize::from(n == 0) + usize::from(n == d)).collect();
            assert_eq!(nd, expected);
            assert!(s.is_connected());
        }
    }

    #[test]
    fn sphere_faces_match_fibre_description() {
        // fibres of d_i over σ at level d+1: {s_0σ} for i=0, {s_{i-1}σ, s_iσ}, {s_dσ} for i=d+1
        for d in 1..=3 {
            let s = FinSimpSet::sphere(d, d + 1).unwrap();
            let sigma = (0..s.level_size(d)).find(|x| s.label(d, *x) != "*").unwrap();
            let degs: Vec<usize> = (0..=d).map(|i| s.degeneracy(d, i, sigma)).collect();
            for i in 0..=d + 1 {
                let fibre: Vec<usize> = (0..s.level_size(d + 1))
                    .filter(|x| s.face(d + 1, i, *x) == sigma)
                    .collect();
                let mut expected = if i == 0 {
                    vec![degs[0]]
                } else if i <= d {
                    vec![degs[i - 1], degs[i]]
                } else {
                    vec![degs[d]]
                };
                expected.sort();
                assert_eq!(fibre, expected, "d={d} i={i}");
            }
        }
    }

    #[test]
    fn constructors_validate() {
        assert_eq!(FinSimpSet::sphere(2, 4).unwrap().validate(), Ok(()));
        assert_eq!(FinSimpSet::standard_simplex(3, 5).validate(), Ok(()));
        assert_eq!(FinSimpSet::boundary_simplex(3, 4).unwrap().validate(), Ok(()));
        let w = FinSimpSet::wedge(&FinSimpSet::sphere(1, 4).unwrap(), &FinSimpSet::sphere(2, 4).unwrap()).unwrap();
        assert_eq!(w.validate(), Ok(()));
        assert_eq!(FinSimpSet::standard_simplex(2, 4).skeleton(1).unwrap().validate(), Ok(()));
    }

    #[test]
    fn seeded_defect_is_reported() {
        let mut k = FinSimpSet::standard_simplex(2, 3);
        // corrupt d_2 on one 2-simplex so that d_0 d_2 ≠ d_1 d_0
        let x = (0..k.level_size(2)).find(|x| k.label(2, *x) == "012").unwrap();
        let wrong = k.face(2, 0, x) as u32;
        let current = k.faces[2][2][x];
        k.faces[2][2][x] = if wrong == current { k.faces[2][1][x] } else { wrong };
        let v = k.validate().unwrap_err();
        assert_eq!(v.level, 2);
        assert!(v.identity.starts_with('d'), "{v}");
    }

    #[test]
    fn wedge_examples() {
        let s1 = FinSimpSet::sphere(1, 3).unwrap();
        let w = FinSimpSet::wedge(&s1, &s1).unwrap();
        assert_eq!(w.level_size(1), 3);
        assert_eq!(w.nondegenerate_counts(), vec![1, 2, 0, 0]);
        let p = FinSimpSet::point(3);
        let b = FinSimpSet::boundary_simplex(2, 3).unwrap();
        let pw = FinSimpSet::wedge(&p, &b).unwrap();
        assert_eq!(pw.level_sizes(), b.level_sizes());
        assert_eq!(pw.nondegenerate_counts(), b.nondegenerate_counts());
        let s2 = FinSimpSet::sphere(2, 3).unwrap();
        let a = FinSimpSet::wedge(&s1, &s2).unwrap();
        let c = FinSimpSet::wedge(&s2, &s1).unwrap();
        assert_eq!(a.level_sizes(), c.level_sizes());
        assert_eq!(a.nondegenerate_counts(), c.nondegenerate_counts());
        assert!(matches!(
            FinSimpSet::wedge(&s1, &FinSimpSet::point(2)),
            Err(SimplicialError::TruncationMismatch(3, 2))
        ));
    }

    #[test]
    fn skeleton_examples() {
        let s2 = FinSimpSet::sphere(2, 4).unwrap();
        let sk = s2.skeleton(1).unwrap();
        assert_eq!(sk.level_sizes(), vec![1; 5]);
        assert_eq!(s2.skeleton(4).unwrap().level_sizes(), s2.level_sizes());
        let t = FinSimpSet::standard_simplex(2, 3).skeleton(1).unwrap();
        assert_eq!(t.nondegenerate_counts(), vec![3, 3, 0, 0]);
        assert_eq!(t.level_sizes(), FinSimpSet::boundary_simplex(2, 3).unwrap().level_sizes());
    }

    #[test]
    fn skeleton_composes_by_minimum() {
        let k = FinSimpSet::standard_simplex(3, 4);
        for n in 0..=4 {
            for m in 0..=4 {
                let a = k.skeleton(n).unwrap().skeleton(m).unwrap();
                let b = k.skeleton(n.min(m)).unwrap();
                assert_eq!(a.level_sizes(), b.level_sizes(), "n={n} m={m}");
            }
        }
    }

    #[test]
    fn disjoint_points_are_disconnected() {
        let p = FinSimpSet::point(2);
        let two = FinSimpSet::disjoint_union(&p, &p).unwrap();
        assert_eq!(two.validate(), Ok(()));
        assert!(!two.is_connected());
    }
}
