//! Reduced words in the universal Coxeter group `W = <s_1, ..., s_n | s_i^2 = e>`,
//! reflections in canonical `w s_i w^-1` form, and the Cayley tree of `W`.
//!
//! The Cayley graph of `W` is an `n`-regular tree whose vertices are reduced
//! words. Every reflection `w s_i w^-1` (with `w` not ending in `i`) labels the
//! edge `{w, w s_i}`; we call the midpoint of that edge the *node* of the
//! reflection.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A reduced word: letters are generator indices `>= 1` and no two adjacent
/// letters are equal. Group elements and reduced words are in bijection.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Word(Vec<usize>);

fn push_letter(buf: &mut Vec<usize>, x: usize) {
    if buf.last() == Some(&x) {
        buf.pop();
    } else {
        buf.push(x);
    }
}

/// Free-product reduction of a raw letter sequence; letters must lie in `1..=rank`.
pub fn reduce(letters: &[usize], rank: usize) -> Result<Word> {
    if let Some(&bad) = letters.iter().find(|&&x| x == 0 || x > rank) {
        return Err(Error::IndexOutOfRange { index: bad, rank });
    }
    Word::from_letters(letters.iter().copied())
}

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn generator(i: usize) -> Self {
        assert!(i >= 1, "generators are 1-based");
        Word(vec![i])
    }

    /// Reduces an arbitrary letter sequence. Only rejects the letter 0.
    pub fn from_letters<I: IntoIterator<Item = usize>>(letters: I) -> Result<Self> {
        let mut buf = Vec::new();
        for x in letters {
            if x == 0 {
                return Err(Error::IndexOutOfRange { index: 0, rank: 0 });
            }
            push_letter(&mut buf, x);
        }
        Ok(Word(buf))
    }

    /// The Coxeter element `s_1 s_2 ... s_n`.
    pub fn coxeter_element(n: usize) -> Self {
        Word((1..=n).collect())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<usize> {
        self.0.last().copied()
    }

    pub fn multiply(&self, other: &Word) -> Word {
        let mut buf = self.0.clone();
        for &x in &other.0 {
            push_letter(&mut buf, x);
        }
        Word(buf)
    }

    pub fn invert(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Right multiplication by a single generator.
    pub fn times(&self, i: usize) -> Word {
        let mut buf = self.0.clone();
        push_letter(&mut buf, i);
        Word(buf)
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    /// Length of the longest common prefix.
    pub fn common_prefix_len(&self, other: &Word) -> usize {
        self.0.iter().zip(&other.0).take_while(|(a, b)| a == b).count()
    }

    pub fn truncated(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    /// Largest letter, or 0 for the identity.
    pub fn max_letter(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }
}

impl TryFrom<Vec<usize>> for Word {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Word::from_letters(v)
    }
}

impl From<Word> for Vec<usize> {
    fn from(w: Word) -> Self {
        w.0
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        for x in &self.0 {
            write!(f, "s{x}")?;
        }
        Ok(())
    }
}

/// Product of a sequence of words.
pub fn product<'a, I: IntoIterator<Item = &'a Word>>(words: I) -> Word {
    words.into_iter().fold(Word::identity(), |acc, w| acc.multiply(w))
}

/// A reflection `prefix * s_core * prefix^-1` with `prefix` reduced and not
/// ending in `core`, so that the palindrome is reduced. This form is unique.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Reflection {
    prefix: Word,
    core: usize,
}

impl Reflection {
    pub fn new(prefix: Word, core: usize) -> Result<Self> {
        if core == 0 || prefix.last() == Some(core) {
            let mut letters = prefix.0.clone();
            letters.push(core);
            return Err(Error::NotAReflection(letters));
        }
        Ok(Reflection { prefix, core })
    }

    pub fn generator(i: usize) -> Self {
        Reflection { prefix: Word::identity(), core: i }
    }

    pub fn prefix(&self) -> &Word {
        &self.prefix
    }

    pub fn core(&self) -> usize {
        self.core
    }

    /// The reduced palindrome `w s_i w^-1`.
    pub fn palindrome(&self) -> Word {
        let mut letters = self.prefix.0.clone();
        letters.push(self.core);
        letters.extend(self.prefix.0.iter().rev());
        Word(letters)
    }

    /// Length of the reduced palindrome, `2 |prefix| + 1`.
    pub fn word_len(&self) -> usize {
        2 * self.prefix.len() + 1
    }

    /// Endpoints `(prefix, prefix * s_core)` of the Cayley-tree edge carrying this reflection.
    pub fn edge(&self) -> (Word, Word) {
        (self.prefix.clone(), self.prefix.times(self.core))
    }

    /// `r g r` for a group element `g`.
    pub fn conjugate(&self, g: &Word) -> Word {
        let p = self.palindrome();
        p.multiply(g).multiply(&p)
    }

    pub fn max_letter(&self) -> usize {
        self.prefix.max_letter().max(self.core)
    }
}

impl TryFrom<Vec<usize>> for Reflection {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        canonical_reflection(&Word::from_letters(v)?)
    }
}

impl From<Reflection> for Vec<usize> {
    fn from(r: Reflection) -> Self {
        r.palindrome().0
    }
}

impl fmt::Display for Reflection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.palindrome().fmt(f)
    }
}

/// Splits a reduced palindrome of odd length into `(prefix, core)`.
pub fn canonical_reflection(w: &Word) -> Result<Reflection> {
    let letters = w.letters();
    let l = letters.len();
    let palindromic = letters.iter().eq(letters.iter().rev());
    if l % 2 == 0 || !palindromic {
        return Err(Error::NotAReflection(letters.to_vec()));
    }
    let half = l / 2;
    Reflection::new(Word(letters[..half].to_vec()), letters[half])
}

/// The partial order on reflections: `r < r'` iff `r'.prefix` begins with
/// `r.prefix` followed by `r.core`, i.e. the node of `r` separates the node of
/// `r'` from the identity vertex.
pub fn precedes(r: &Reflection, r2: &Reflection) -> bool {
    let p = r.prefix.letters();
    let q = r2.prefix.letters();
    q.len() > p.len() && q.starts_with(p) && q[p.len()] == r.core
}

/// Vertex sequence of the tree geodesic between two vertices.
pub fn vertex_path(x: &Word, y: &Word) -> Vec<Word> {
    let lcp = x.common_prefix_len(y);
    let mut out: Vec<Word> = (lcp..=x.len()).rev().map(|l| x.truncated(l)).collect();
    out.extend((lcp + 1..=y.len()).map(|l| y.truncated(l)));
    out
}

fn tree_distance(x: &Word, y: &Word) -> usize {
    x.len() + y.len() - 2 * x.common_prefix_len(y)
}

/// Vertices on the geodesic between the nodes of `a` and `b`: from the
/// endpoint of `a`'s edge nearer to `b` to the endpoint of `b`'s edge nearer to `a`.
pub fn node_path(a: &Reflection, b: &Reflection) -> Vec<Word> {
    if a == b {
        return Vec::new();
    }
    let (a0, a1) = a.edge();
    let (b0, b1) = b.edge();
    let (x, y) = [(&a0, &b0), (&a0, &b1), (&a1, &b0), (&a1, &b1)]
        .into_iter()
        .min_by_key(|(x, y)| tree_distance(x, y))
        .unwrap();
    vertex_path(x, y)
}

/// Whether the node of `n` lies strictly between the nodes of `a` and `b`.
pub fn separates(n: &Reflection, a: &Reflection, b: &Reflection) -> bool {
    if n == a || n == b {
        return false;
    }
    let (u, v) = n.edge();
    let path = node_path(a, b);
    path.windows(2)
        .any(|w| (w[0] == u && w[1] == v) || (w[0] == v && w[1] == u))
}

/// Positions (0-based) of tuple members whose node separates two other members.
pub fn separating_nodes(tuple: &[Reflection]) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    for (i, n) in tuple.iter().enumerate() {
        'pairs: for (a_idx, a) in tuple.iter().enumerate() {
            for (b_idx, b) in tuple.iter().enumerate().skip(a_idx + 1) {
                if a_idx != i && b_idx != i && separates(n, a, b) {
                    out.insert(i);
                    break 'pairs;
                }
            }
        }
    }
    out
}

/// Whether all nodes of the tuple sit on edges sharing one common vertex
/// (one fundamental star).
pub fn in_one_star(tuple: &[Reflection]) -> bool {
    let Some(first) = tuple.first() else {
        return true;
    };
    let distinct: BTreeSet<&Reflection> = tuple.iter().collect();
    if distinct.len() != tuple.len() {
        return false;
    }
    let (u, v) = first.edge();
    [u, v].iter().any(|center| {
        tuple.iter().all(|r| {
            let (x, y) = r.edge();
            &x == center || &y == center
        })
    })
}
