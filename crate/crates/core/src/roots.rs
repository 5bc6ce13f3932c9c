//! The quadratic space of an acyclic quiver: Cartan companion, roots, and
//! Y-seeds mutated by partial reflections.

use std::fmt;
use std::sync::Arc;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::coxeter::{product, Reflection, Word};
use crate::error::{Error, Result};
use crate::quiver::ExchangeMatrix;

/// Largest rank for which [`speyer_thomas_check`] enumerates orderings.
pub const MAX_BRUTE_FORCE_RANK: usize = 8;

/// Symmetric matrix with 2 on the diagonal and `-|b[i][j]|` elsewhere.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GramMatrix {
    n: usize,
    m: Vec<BigInt>,
}

/// Integer coordinates over the simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootVector(pub Vec<BigInt>);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootSign {
    Positive,
    Negative,
    Mixed,
}

impl RootSign {
    pub fn symbol(self) -> char {
        match self {
            RootSign::Positive => '+',
            RootSign::Negative => '-',
            RootSign::Mixed => '?',
        }
    }
}

/// Builds the Cartan companion of an acyclic matrix indexed so that arrows go
/// from smaller to larger vertices.
pub fn cartan_companion(b: &ExchangeMatrix) -> Result<GramMatrix> {
    if !b.is_acyclic() {
        return Err(Error::NotAcyclic);
    }
    if !b.is_normalized() {
        return Err(Error::NotNormalized);
    }
    let n = b.rank();
    let mut m = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            m.push(if i == j { BigInt::from(2) } else { -b.at(i, j).abs() });
        }
    }
    Ok(GramMatrix { n, m })
}

impl GramMatrix {
    pub fn rank(&self) -> usize {
        self.n
    }

    /// Entry `m[i][j]`, 1-based.
    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.m[(i - 1) * self.n + (j - 1)]
    }

    fn check(&self, u: &RootVector) -> Result<()> {
        if u.0.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: u.0.len() });
        }
        Ok(())
    }

    /// `u^T M v`.
    pub fn inner(&self, u: &RootVector, v: &RootVector) -> Result<BigInt> {
        self.check(u)?;
        self.check(v)?;
        let mut acc = BigInt::zero();
        for (i, ui) in u.0.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            let row = &self.m[i * self.n..(i + 1) * self.n];
            let mv: BigInt = row.iter().zip(&v.0).map(|(a, b)| a * b).sum();
            acc += ui * mv;
        }
        Ok(acc)
    }

    /// `<u, e_i>` for the simple root `e_i` (1-based).
    fn pair_with_simple(&self, u: &RootVector, i: usize) -> BigInt {
        let row = &self.m[(i - 1) * self.n..i * self.n];
        row.iter().zip(&u.0).map(|(a, b)| a * b).sum()
    }

    /// `r_v(u) = u - <u, v> v`, defined when `<v, v> = 2`.
    pub fn reflect(&self, u: &RootVector, v: &RootVector) -> Result<RootVector> {
        let vv = self.inner(v, v)?;
        if vv != BigInt::from(2) {
            return Err(Error::NotUnitRoot(vv.to_string()));
        }
        let uv = self.inner(u, v)?;
        Ok(RootVector(
            u.0.iter().zip(&v.0).map(|(a, b)| a - &uv * b).collect(),
        ))
    }

    fn reflect_simple(&self, u: &RootVector, i: usize) -> RootVector {
        let p = self.pair_with_simple(u, i);
        let mut out = u.clone();
        out.0[i - 1] -= p;
        out
    }
}

impl RootVector {
    pub fn from_i64(coords: &[i64]) -> Self {
        RootVector(coords.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn simple(n: usize, i: usize) -> Self {
        let mut v = vec![BigInt::zero(); n];
        v[i - 1] = BigInt::one();
        RootVector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn neg(&self) -> Self {
        RootVector(self.0.iter().map(|x| -x).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Index (1-based) if this is a simple root `e_i`.
    pub fn simple_index(&self) -> Option<usize> {
        let mut found = None;
        for (i, x) in self.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            if x.is_one() && found.is_none() {
                found = Some(i + 1);
            } else {
                return None;
            }
        }
        found
    }

    pub fn max_abs(&self) -> BigInt {
        self.0.iter().map(|x| x.abs()).max().unwrap_or_default()
    }

    fn strings(&self) -> Vec<String> {
        self.0.iter().map(|x| x.to_string()).collect()
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

pub fn root_sign(u: &RootVector) -> Result<RootSign> {
    let pos = u.0.iter().any(Signed::is_positive);
    let neg = u.0.iter().any(Signed::is_negative);
    match (pos, neg) {
        (false, false) => Err(Error::ZeroVector),
        (true, false) => Ok(RootSign::Positive),
        (false, true) => Ok(RootSign::Negative),
        (true, true) => Ok(RootSign::Mixed),
    }
}

/// Writes a real root as `w(e_k)` by greedy descent: while the root is not
/// simple, reflect in the smallest simple root pairing positively with it.
/// Negative roots are negated first.
pub fn root_to_reflection(u: &RootVector, gram: &GramMatrix) -> Result<Reflection> {
    let not_real = || Error::NotARealRoot(u.strings());
    let mut cur = match root_sign(u)? {
        RootSign::Positive => u.clone(),
        RootSign::Negative => u.neg(),
        RootSign::Mixed => return Err(Error::SignIncoherent(u.strings())),
    };
    if gram.inner(&cur, &cur)? != BigInt::from(2) {
        return Err(not_real());
    }
    let mut prefix = Vec::new();
    loop {
        if let Some(k) = cur.simple_index() {
            let w = Word::from_letters(prefix)?;
            return Reflection::new(w, k).map_err(|_| not_real());
        }
        let i = (1..=gram.rank())
            .find(|&i| gram.pair_with_simple(&cur, i).is_positive())
            .ok_or_else(not_real)?;
        cur = gram.reflect_simple(&cur, i);
        if cur.0.iter().any(Signed::is_negative) {
            return Err(not_real());
        }
        prefix.push(i);
    }
}

/// Positive root `w(e_k)` of the reflection `w s_k w^-1`.
pub fn reflection_to_root(r: &Reflection, gram: &GramMatrix) -> RootVector {
    let mut u = RootVector::simple(gram.rank(), r.core());
    for &i in r.prefix().letters().iter().rev() {
        u = gram.reflect_simple(&u, i);
    }
    if root_sign(&u) == Ok(RootSign::Negative) {
        u.neg()
    } else {
        u
    }
}

/// Checks the two conditions characterizing c-matrices: same-sign roots pair
/// non-positively, and some ordering with all positive roots first multiplies
/// to `s_1 ... s_n`.
pub fn speyer_thomas_check(roots: &[RootVector], gram: &GramMatrix) -> Result<bool> {
    let n = gram.rank();
    if n > MAX_BRUTE_FORCE_RANK {
        return Err(Error::RankTooLarge(n));
    }
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for u in roots {
        let refl = root_to_reflection(u, gram)?;
        match root_sign(u)? {
            RootSign::Positive => pos.push((u, refl)),
            RootSign::Negative => neg.push((u, refl)),
            RootSign::Mixed => unreachable!("rejected by root_to_reflection"),
        }
    }
    for group in [&pos, &neg] {
        for (a, b) in group.iter().tuple_combinations() {
            if gram.inner(a.0, b.0)?.is_positive() {
                return Ok(false);
            }
        }
    }
    let target = Word::coxeter_element(n);
    let pos_words: Vec<Word> = pos.iter().map(|(_, r)| r.palindrome()).collect();
    let neg_words: Vec<Word> = neg.iter().map(|(_, r)| r.palindrome()).collect();
    for p in pos_words.iter().permutations(pos_words.len()) {
        let head = product(p);
        for q in neg_words.iter().permutations(neg_words.len()) {
            if head.multiply(&product(q)) == target {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Start of the positive block when the signs are read cyclically: the first
/// positive entry whose cyclic predecessor is negative, or 0 when every entry
/// has the same sign.
pub fn positive_block_start(signs: &[RootSign]) -> usize {
    let n = signs.len();
    (0..n)
        .find(|&i| {
            signs[i] == RootSign::Positive && signs[(i + n - 1) % n] != RootSign::Positive
        })
        .unwrap_or(0)
}

/// Number of maximal runs of equal sign when read cyclically.
pub fn cyclic_sign_runs(signs: &[RootSign]) -> usize {
    let n = signs.len();
    let changes = (0..n).filter(|&i| signs[i] != signs[(i + 1) % n]).count();
    changes.max(1)
}

/// A Y-seed: the current exchange matrix, its c-vectors (columns of the
/// c-matrix), the Cartan companion of the initial matrix, and the mutation path.
#[derive(Clone, Debug)]
pub struct YSeed {
    pub b: ExchangeMatrix,
    pub c: Vec<RootVector>,
    pub gram: Arc<GramMatrix>,
    pub path: Vec<usize>,
}

impl PartialEq for YSeed {
    /// Seeds compare by `(B, C)`; the path is bookkeeping.
    fn eq(&self, other: &Self) -> bool {
        self.b == other.b && self.c == other.c
    }
}

impl Eq for YSeed {}

impl YSeed {
    /// Initial seed of an acyclic, normalized, 2-complete matrix.
    pub fn initial(b: &ExchangeMatrix) -> Result<Self> {
        let gram = cartan_companion(b)?;
        if !b.is_two_complete() {
            return Err(Error::NotTwoComplete);
        }
        let n = b.rank();
        Ok(YSeed {
            b: b.clone(),
            c: (1..=n).map(|i| RootVector::simple(n, i)).collect(),
            gram: Arc::new(gram),
            path: Vec::new(),
        })
    }

    pub fn rank(&self) -> usize {
        self.b.rank()
    }

    /// Mutation by partial reflection in `c_k`.
    pub fn mutate(&self, k: usize) -> Result<Self> {
        let n = self.rank();
        if k == 0 || k > n {
            return Err(Error::IndexOutOfRange { index: k, rank: n });
        }
        let ck = &self.c[k - 1];
        let positive = match root_sign(ck)? {
            RootSign::Positive => true,
            RootSign::Negative => false,
            RootSign::Mixed => return Err(Error::SignIncoherent(ck.strings())),
        };
        let mut c = Vec::with_capacity(n);
        for j in 1..=n {
            let cj = &self.c[j - 1];
            if j == k {
                c.push(ck.neg());
                continue;
            }
            let bjk = self.b.entry(j, k);
            let flip = if positive { bjk.is_negative() } else { bjk.is_positive() };
            c.push(if flip { self.gram.reflect(cj, ck)? } else { cj.clone() });
        }
        let mut path = self.path.clone();
        path.push(k);
        Ok(YSeed { b: self.b.mutate(k)?, c, gram: Arc::clone(&self.gram), path })
    }

    /// Mutation computed by applying matrix mutation to the `2n x n` matrix
    /// with `B` on top and `C` below. Independent of [`mutate`](Self::mutate).
    pub fn mutate_by_extended_matrix(&self, k: usize) -> Result<Self> {
        let n = self.rank();
        if k == 0 || k > n {
            return Err(Error::IndexOutOfRange { index: k, rank: n });
        }
        let kk = k - 1;
        let mut ext: Vec<Vec<BigInt>> = self.b.rows();
        for i in 0..n {
            ext.push(self.c.iter().map(|col| col.0[i].clone()).collect());
        }
        let two = BigInt::from(2);
        let mutated: Vec<Vec<BigInt>> = (0..2 * n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == kk || j == kk {
                            -&ext[i][j]
                        } else {
                            let (bik, bkj) = (&ext[i][kk], &ext[kk][j]);
                            &ext[i][j] + (bik.abs() * bkj + bik * bkj.abs()) / &two
                        }
                    })
                    .collect()
            })
            .collect();
        let b = ExchangeMatrix::new(mutated[..n].to_vec())?;
        let c = (0..n)
            .map(|j| RootVector((n..2 * n).map(|i| mutated[i][j].clone()).collect()))
            .collect();
        let mut path = self.path.clone();
        path.push(k);
        Ok(YSeed { b, c, gram: Arc::clone(&self.gram), path })
    }

    pub fn mutate_path(&self, path: &[usize]) -> Result<Self> {
        let mut s = self.clone();
        for &k in path {
            s = s.mutate(k)?;
        }
        Ok(s)
    }

    pub fn signs(&self) -> Result<Vec<RootSign>> {
        self.c.iter().map(root_sign).collect()
    }

    pub fn reflections(&self) -> Result<Vec<Reflection>> {
        self.c.iter().map(|u| root_to_reflection(u, &self.gram)).collect()
    }

    pub fn natural_order(&self) -> Result<Vec<usize>> {
        self.b.natural_order()
    }

    /// Reflections and signs of the c-vectors listed in natural order.
    pub fn ordered_tuple(&self) -> Result<Vec<(Reflection, RootSign)>> {
        self.natural_order()?
            .into_iter()
            .map(|v| {
                let u = &self.c[v - 1];
                Ok((root_to_reflection(u, &self.gram)?, root_sign(u)?))
            })
            .collect()
    }

    /// The natural-order tuple rotated to begin at the start of its positive
    /// block; this is the clockwise order of the arcs read from the basepoint.
    pub fn clockwise_tuple(&self) -> Result<Vec<(Reflection, RootSign)>> {
        let mut t = self.ordered_tuple()?;
        let signs: Vec<RootSign> = t.iter().map(|(_, s)| *s).collect();
        t.rotate_left(positive_block_start(&signs));
        Ok(t)
    }

    /// Whether the c-vectors contain the given root.
    pub fn contains_root(&self, u: &RootVector) -> bool {
        self.c.iter().any(|c| c == u)
    }

    /// Largest absolute coordinate among the c-vectors, as `f64` for reporting.
    pub fn c_magnitude(&self) -> f64 {
        self.c
            .iter()
            .map(|u| u.max_abs().to_f64().unwrap_or(f64::INFINITY))
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::canonical_reflection;
    use proptest::prelude::*;

    fn b3() -> ExchangeMatrix {
        ExchangeMatrix::complete(3, 2)
    }

    fn g3() -> GramMatrix {
        cartan_companion(&b3()).unwrap()
    }

    fn rv(x: &[i64]) -> RootVector {
        RootVector::from_i64(x)
    }

    fn refl(letters: &[usize]) -> Reflection {
        canonical_reflection(&Word::from_letters(letters.iter().copied()).unwrap()).unwrap()
    }

    #[test]
    fn cartan_examples() {
        let g = g3();
        for i in 1..=3 {
            for j in 1..=3 {
                let e = if i == j { 2 } else { -2 };
                assert_eq!(g.entry(i, j), &BigInt::from(e));
            }
        }
        let r2 = ExchangeMatrix::from_rows(&[vec![0, 3], vec![-3, 0]]).unwrap();
        let g2 = cartan_companion(&r2).unwrap();
        assert_eq!(g2.entry(1, 2), &BigInt::from(-3));
        assert_eq!(g2.entry(2, 2), &BigInt::from(2));
        assert_eq!(cartan_companion(&b3().mutate(2).unwrap()), Err(Error::NotAcyclic));
        assert_eq!(cartan_companion(&b3().mutate(1).unwrap()), Err(Error::NotNormalized));
    }

    #[test]
    fn inner_examples() {
        let g = g3();
        for i in 1..=3 {
            let e = RootVector::simple(3, i);
            assert_eq!(g.inner(&e, &e).unwrap(), BigInt::from(2));
        }
        assert_eq!(g.inner(&rv(&[2, 1, 0]), &rv(&[2, 0, 1])).unwrap(), BigInt::from(-2));
        let (u, w, v) = (rv(&[1, 4, -2]), rv(&[3, 0, 5]), rv(&[-1, 2, 7]));
        let sum = RootVector(u.0.iter().zip(&w.0).map(|(a, b)| a + b).collect());
        assert_eq!(
            g.inner(&sum, &v).unwrap(),
            g.inner(&u, &v).unwrap() + g.inner(&w, &v).unwrap()
        );
        assert!(matches!(g.inner(&rv(&[1, 0]), &v), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn reflect_examples() {
        let g = g3();
        let v = rv(&[2, 1, 0]);
        assert_eq!(g.reflect(&v, &v).unwrap(), v.neg());
        assert_eq!(
            g.reflect(&RootVector::simple(3, 2), &RootVector::simple(3, 1)).unwrap(),
            rv(&[2, 1, 0])
        );
        let u = rv(&[5, -3, 8]);
        let once = g.reflect(&u, &v).unwrap();
        assert_eq!(g.reflect(&once, &v).unwrap(), u);
        assert_eq!(g.inner(&once, &once).unwrap(), g.inner(&u, &u).unwrap());
        assert!(matches!(g.reflect(&u, &rv(&[1, 1, 0])), Err(Error::NotUnitRoot(_))));
    }

    #[test]
    fn seed_mutation_example() {
        let s = YSeed::initial(&b3()).unwrap();
        let m = s.mutate(1).unwrap();
        assert_eq!(m.c, vec![rv(&[-1, 0, 0]), rv(&[2, 1, 0]), rv(&[2, 0, 1])]);
        assert_eq!(m.b, b3().mutate(1).unwrap());
        assert_eq!(m.path, vec![1]);
        assert_eq!(s.mutate_by_extended_matrix(1).unwrap(), m);

        let back = m.mutate(1).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.path, vec![1, 1]);

        let sink = s.mutate(3).unwrap();
        assert_eq!(sink.c, vec![rv(&[1, 0, 0]), rv(&[0, 1, 0]), rv(&[0, 0, -1])]);
        assert_eq!(s.mutate_by_extended_matrix(3).unwrap(), sink);
    }

    #[test]
    fn initial_seed_preconditions() {
        assert_eq!(YSeed::initial(&ExchangeMatrix::complete(3, 1)), Err(Error::NotTwoComplete));
        assert_eq!(YSeed::initial(&b3().mutate(2).unwrap()), Err(Error::NotAcyclic));
    }

    #[test]
    fn signs() {
        assert_eq!(root_sign(&rv(&[2, 1, 0])).unwrap(), RootSign::Positive);
        assert_eq!(root_sign(&rv(&[-1, 0, 0])).unwrap(), RootSign::Negative);
        assert_eq!(root_sign(&rv(&[1, -1, 0])).unwrap(), RootSign::Mixed);
        assert_eq!(root_sign(&rv(&[0, 0, 0])), Err(Error::ZeroVector));
    }

    #[test]
    fn root_reflection_examples() {
        let g = g3();
        assert_eq!(root_to_reflection(&rv(&[2, 1, 0]), &g).unwrap(), refl(&[1, 2, 1]));
        assert_eq!(root_to_reflection(&rv(&[-2, -1, 0]), &g).unwrap(), refl(&[1, 2, 1]));
        for k in 1..=3 {
            assert_eq!(
                root_to_reflection(&RootVector::simple(3, k), &g).unwrap(),
                Reflection::generator(k)
            );
            assert_eq!(reflection_to_root(&Reflection::generator(k), &g), RootVector::simple(3, k));
        }
        assert_eq!(reflection_to_root(&refl(&[1, 2, 1]), &g), rv(&[2, 1, 0]));
        assert!(matches!(root_to_reflection(&rv(&[1, 1, 0]), &g), Err(Error::NotARealRoot(_))));
        assert!(matches!(root_to_reflection(&rv(&[1, -1, 0]), &g), Err(Error::SignIncoherent(_))));
    }

    #[test]
    fn speyer_thomas_examples() {
        let g = g3();
        let roots = [rv(&[-1, 0, 0]), rv(&[2, 1, 0]), rv(&[2, 0, 1])];
        assert!(speyer_thomas_check(&roots, &g).unwrap());
        let simple: Vec<RootVector> = (1..=3).map(|i| RootVector::simple(3, i)).collect();
        assert!(speyer_thomas_check(&simple, &g).unwrap());
        let dup = [rv(&[1, 0, 0]), rv(&[1, 0, 0]), rv(&[0, 0, 1])];
        assert!(!speyer_thomas_check(&dup, &g).unwrap());
        let pairs_badly = [rv(&[1, 0, 0]), rv(&[2, 1, 0]), rv(&[2, 0, 1])];
        assert!(!speyer_thomas_check(&pairs_badly, &g).unwrap());
        let big = ExchangeMatrix::complete(9, 2);
        let g9 = cartan_companion(&big).unwrap();
        let simple9: Vec<RootVector> = (1..=9).map(|i| RootVector::simple(9, i)).collect();
        assert_eq!(speyer_thomas_check(&simple9, &g9), Err(Error::RankTooLarge(9)));
    }

    #[test]
    fn block_start_and_runs() {
        use RootSign::*;
        assert_eq!(positive_block_start(&[Positive, Negative, Positive]), 2);
        assert_eq!(positive_block_start(&[Positive, Positive, Negative]), 0);
        assert_eq!(positive_block_start(&[Negative, Negative]), 0);
        assert_eq!(positive_block_start(&[Negative, Positive, Positive]), 1);
        assert_eq!(cyclic_sign_runs(&[Positive, Negative, Positive]), 2);
        assert_eq!(cyclic_sign_runs(&[Positive, Positive]), 1);
        assert_eq!(cyclic_sign_runs(&[Positive, Negative, Positive, Negative]), 4);
    }

    #[test]
    fn clockwise_tuple_of_mu2() {
        let s = YSeed::initial(&b3()).unwrap().mutate(2).unwrap();
        let t = s.clockwise_tuple().unwrap();
        let words: Vec<Reflection> = t.iter().map(|(r, _)| r.clone()).collect();
        assert_eq!(words, vec![refl(&[1]), refl(&[2, 3, 2]), refl(&[2])]);
        let prod = product(words.iter().map(|r| r.palindrome()).collect::<Vec<_>>().iter());
        assert_eq!(prod, Word::coxeter_element(3));
    }

    proptest! {
        #[test]
        fn reflection_root_roundtrip(prefix in prop::collection::vec(1usize..=4, 0..=5), core in 1usize..=4) {
            let b = ExchangeMatrix::from_upper_weights(4, &[2, 3, 2, 4, 2, 3]).unwrap();
            let g = cartan_companion(&b).unwrap();
            let w = Word::from_letters(prefix).unwrap();
            let r = canonical_reflection(&w.multiply(&Word::generator(core)).multiply(&w.invert())).unwrap();
            let u = reflection_to_root(&r, &g);
            prop_assert_eq!(g.inner(&u, &u).unwrap(), BigInt::from(2));
            prop_assert_eq!(root_sign(&u).unwrap(), RootSign::Positive);
            prop_assert_eq!(root_to_reflection(&u, &g).unwrap(), r);
        }
    }
}
