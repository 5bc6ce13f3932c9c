//! Exchange matrices of quivers and their mutations.
//!
//! Vertices are 1-based in every public signature. Entries are arbitrary
//! precision integers since weights grow exponentially along increasing
//! mutations.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Skew-symmetric integer matrix `b` with `b[i][j] > 0` iff there is an arrow `i -> j`
/// of weight `b[i][j]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExchangeMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

/// How a single mutation changes the arrow weights `|b[i][j]|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MutationKind {
    /// Some weight grows and none shrinks.
    Increasing,
    /// Some weight shrinks and none grows.
    Decreasing,
    /// No weight changes.
    Neutral,
    /// Some weights grow and some shrink.
    Mixed,
}

/// The vertex whose mutation is decreasing, together with its in- and
/// out-neighbourhoods: `I = {i : b[i][k] > 0}` and `J = {j : b[j][k] < 0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatingVertex {
    pub k: usize,
    pub i_set: BTreeSet<usize>,
    pub j_set: BTreeSet<usize>,
}

impl ExchangeMatrix {
    pub fn new(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::NotSkewSymmetric("empty matrix".into()));
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSkewSymmetric(format!(
                    "row {} has length {}, expected {}",
                    i + 1,
                    row.len(),
                    n
                )));
            }
            entries.extend(row);
        }
        let m = ExchangeMatrix { n, entries };
        for i in 0..n {
            if !m.at(i, i).is_zero() {
                return Err(Error::NotSkewSymmetric(format!("nonzero diagonal at {}", i + 1)));
            }
            for j in i + 1..n {
                if *m.at(i, j) != -m.at(j, i) {
                    return Err(Error::NotSkewSymmetric(format!(
                        "b[{}][{}] != -b[{}][{}]",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        Ok(m)
    }

    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| x.into()).collect())
                .collect(),
        )
    }

    /// Acyclic normalized matrix with `b[i][j] = weight` for every `i < j`.
    pub fn complete(n: usize, weight: i64) -> Self {
        let mut rows = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                rows[i][j] = weight;
                rows[j][i] = -weight;
            }
        }
        Self::from_rows(&rows).expect("complete matrix is skew-symmetric")
    }

    /// Acyclic normalized matrix from the upper-triangle weights, listed row by row.
    pub fn from_upper_weights(n: usize, weights: &[i64]) -> Result<Self> {
        let expected = n * (n - 1) / 2;
        if weights.len() != expected {
            return Err(Error::DimensionMismatch { expected, got: weights.len() });
        }
        let mut rows = vec![vec![0i64; n]; n];
        let mut w = weights.iter();
        for i in 0..n {
            for j in i + 1..n {
                let x = *w.next().unwrap();
                rows[i][j] = x;
                rows[j][i] = -x;
            }
        }
        Self::from_rows(&rows)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub(crate) fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    /// Entry `b[i][j]`, 1-based.
    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        self.at(i - 1, j - 1)
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    fn check_index(&self, k: usize) -> Result<usize> {
        if k == 0 || k > self.n {
            Err(Error::IndexOutOfRange { index: k, rank: self.n })
        } else {
            Ok(k - 1)
        }
    }

    /// Matrix mutation in direction `k`.
    pub fn mutate(&self, k: usize) -> Result<Self> {
        let k = self.check_index(k)?;
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let b = self.at(i, j);
                let v = if i == k || j == k {
                    -b
                } else {
                    let (bik, bkj) = (self.at(i, k), self.at(k, j));
                    if bik.is_positive() && bkj.is_positive() {
                        b + bik * bkj
                    } else if bik.is_negative() && bkj.is_negative() {
                        b - bik * bkj
                    } else {
                        b.clone()
                    }
                };
                entries.push(v);
            }
        }
        Ok(ExchangeMatrix { n, entries })
    }

    /// Applies mutations left to right.
    pub fn mutate_path(&self, path: &[usize]) -> Result<Self> {
        let mut m = self.clone();
        for &k in path {
            m = m.mutate(k)?;
        }
        Ok(m)
    }

    /// Topological order (0-based) of the digraph `i -> j iff b[i][j] > 0`,
    /// smallest available vertex first, or `None` if there is a cycle.
    fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.n;
        let mut indeg: Vec<usize> = (0..n)
            .map(|j| (0..n).filter(|&i| self.at(i, j).is_positive()).count())
            .collect();
        let mut ready: BTreeSet<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop_first() {
            order.push(v);
            for w in 0..n {
                if self.at(v, w).is_positive() {
                    indeg[w] -= 1;
                    if indeg[w] == 0 {
                        ready.insert(w);
                    }
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    pub fn is_two_complete(&self) -> bool {
        let two = BigInt::from(2);
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.at(i, j).abs() >= two))
    }

    /// `b[i][j] >= 0` for all `i < j`.
    pub fn is_normalized(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| !self.at(i, j).is_negative()))
    }

    /// `(sinks, sources)` of the quiver, 1-based.
    pub fn sinks_and_sources(&self) -> (BTreeSet<usize>, BTreeSet<usize>) {
        let n = self.n;
        let sinks = (0..n)
            .filter(|&v| (0..n).all(|w| !self.at(v, w).is_positive()))
            .map(|v| v + 1)
            .collect();
        let sources = (0..n)
            .filter(|&v| (0..n).all(|w| !self.at(v, w).is_negative()))
            .map(|v| v + 1)
            .collect();
        (sinks, sources)
    }

    /// Arrow weights `|b[i][j]|` for `i < j`, row by row.
    pub fn weights(&self) -> Vec<BigInt> {
        let mut out = Vec::with_capacity(self.n * (self.n - 1) / 2);
        for i in 0..self.n {
            for j in i + 1..self.n {
                out.push(self.at(i, j).abs());
            }
        }
        out
    }

    pub fn total_weight(&self) -> BigInt {
        self.weights().into_iter().sum()
    }

    pub fn max_weight(&self) -> BigInt {
        self.weights().into_iter().max().unwrap_or_default()
    }

    pub fn classify_mutation(&self, k: usize) -> Result<MutationKind> {
        let mutated = self.mutate(k)?;
        let mut up = false;
        let mut down = false;
        for (old, new) in self.weights().iter().zip(mutated.weights().iter()) {
            match new.cmp(old) {
                std::cmp::Ordering::Greater => up = true,
                std::cmp::Ordering::Less => down = true,
                std::cmp::Ordering::Equal => {}
            }
        }
        Ok(match (up, down) {
            (false, false) => MutationKind::Neutral,
            (true, false) => MutationKind::Increasing,
            (false, true) => MutationKind::Decreasing,
            (true, true) => MutationKind::Mixed,
        })
    }

    pub fn mutation_kinds(&self) -> Vec<MutationKind> {
        (1..=self.n)
            .map(|k| self.classify_mutation(k).expect("index in range"))
            .collect()
    }

    /// Directions (1-based) whose mutation is decreasing.
    pub fn decreasing_directions(&self) -> Vec<usize> {
        self.mutation_kinds()
            .into_iter()
            .enumerate()
            .filter(|(_, kind)| *kind == MutationKind::Decreasing)
            .map(|(k, _)| k + 1)
            .collect()
    }

    pub fn separating_vertex(&self) -> Result<SeparatingVertex> {
        let dec = self.decreasing_directions();
        match dec.as_slice() {
            [] => Err(Error::NoDecreasingMutation),
            [k] => {
                let kk = k - 1;
                let i_set = (0..self.n)
                    .filter(|&i| self.at(i, kk).is_positive())
                    .map(|i| i + 1)
                    .collect();
                let j_set = (0..self.n)
                    .filter(|&j| self.at(j, kk).is_negative())
                    .map(|j| j + 1)
                    .collect();
                Ok(SeparatingVertex { k: *k, i_set, j_set })
            }
            _ => Err(Error::MultipleDecreasing(dec)),
        }
    }

    /// Follows the unique decreasing mutation until the matrix is acyclic.
    /// Returns the acyclic matrix and the mutation sequence applied.
    pub fn acyclic_representative(&self) -> Result<(Self, Vec<usize>)> {
        if !self.is_two_complete() {
            return Err(Error::NotTwoComplete);
        }
        let mut current = self.clone();
        let mut path = Vec::new();
        // total weight strictly drops at every step, so this terminates
        while !current.is_acyclic() {
            match current.separating_vertex() {
                Ok(sep) => {
                    current = current.mutate(sep.k)?;
                    path.push(sep.k);
                }
                Err(Error::NoDecreasingMutation) => {
                    return Err(Error::NotMutationAcyclic { path })
                }
                Err(e) => return Err(e),
            }
        }
        Ok((current, path))
    }

    /// The natural vertex order (1-based): for an acyclic quiver the order in
    /// which every arrow points forward; for a non-acyclic one, the order of the
    /// acyclic quiver obtained by reversing all arrows between `I` and `J`.
    pub fn natural_order(&self) -> Result<Vec<usize>> {
        if self.is_acyclic() {
            return self.tournament_order();
        }
        let sep = self.separating_vertex()?;
        let mut flipped = self.clone();
        let n = self.n;
        for &i in &sep.i_set {
            for &j in &sep.j_set {
                let (a, b) = (i - 1, j - 1);
                flipped.entries[a * n + b] = -self.at(a, b);
                flipped.entries[b * n + a] = -self.at(b, a);
            }
        }
        if !flipped.is_acyclic() {
            return Err(Error::NotAcyclic);
        }
        flipped.tournament_order()
    }

    fn tournament_order(&self) -> Result<Vec<usize>> {
        let order = self.topological_order().ok_or(Error::NotAcyclic)?;
        for (a, &u) in order.iter().enumerate() {
            for &v in &order[a + 1..] {
                if !self.at(u, v).is_positive() {
                    return Err(Error::NotTotal);
                }
            }
        }
        Ok(order.into_iter().map(|v| v + 1).collect())
    }

    /// Matrix with vertex `i` of the result being vertex `perm[i-1]` of `self`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n;
        if perm.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: perm.len() });
        }
        let mut seen = vec![false; n];
        for &p in perm {
            let p = self.check_index(p)?;
            if std::mem::replace(&mut seen[p], true) {
                return Err(Error::Parse(format!("{perm:?} is not a permutation")));
            }
        }
        let mut entries = Vec::with_capacity(n * n);
        for &pi in perm {
            for &pj in perm {
                entries.push(self.at(pi - 1, pj - 1).clone());
            }
        }
        Ok(ExchangeMatrix { n, entries })
    }

    /// Relabels an acyclic matrix so that `b[i][j] >= 0` for `i < j`.
    /// Returns the normalized matrix and the permutation used (see [`relabel`](Self::relabel)).
    pub fn normalize(&self) -> Result<(Self, Vec<usize>)> {
        let order = self.topological_order().ok_or(Error::NotAcyclic)?;
        let perm: Vec<usize> = order.into_iter().map(|v| v + 1).collect();
        Ok((self.relabel(&perm)?, perm))
    }
}

impl fmt::Display for ExchangeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.entries.chunks(self.n).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
