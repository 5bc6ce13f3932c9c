//! Arcs on the punctured disc encoded by their ray-crossing sequences, and the
//! tuple machinery built on them: bad pairs, braid swaps and twins.
//!
//! An arc from the basepoint `b` to the puncture `p_k` that crosses the rays
//! `l_{i_1}, ..., l_{i_m}` in order corresponds to the reflection
//! `s_{i_1} ... s_{i_m} s_k s_{i_m} ... s_{i_1}`.

use serde::{Deserialize, Serialize};

use crate::coxeter::{canonical_reflection, precedes, product, Reflection, Word};
use crate::error::{Error, Result};
use crate::roots::{
    reflection_to_root, speyer_thomas_check, GramMatrix, RootSign, RootVector,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arc {
    pub crossings: Vec<usize>,
    pub endpoint: usize,
}

impl Arc {
    /// Builds an arc, rejecting crossing sequences that are not reduced.
    pub fn new(crossings: Vec<usize>, endpoint: usize) -> Result<Self> {
        let arc = Arc { crossings, endpoint };
        arc.check_reduced()?;
        Ok(arc)
    }

    pub fn is_reduced(&self) -> bool {
        self.check_reduced().is_ok()
    }

    fn check_reduced(&self) -> Result<()> {
        let unreduced = || Error::Unreduced {
            crossings: self.crossings.clone(),
            endpoint: self.endpoint,
        };
        if self.endpoint == 0 || self.crossings.contains(&0) {
            return Err(unreduced());
        }
        if self.crossings.windows(2).any(|w| w[0] == w[1]) {
            return Err(unreduced());
        }
        if self.crossings.last() == Some(&self.endpoint) {
            return Err(unreduced());
        }
        Ok(())
    }

    /// Number of crossings; the reflection word has length `2 * len + 1`.
    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }

    pub fn max_index(&self) -> usize {
        self.crossings.iter().copied().max().unwrap_or(0).max(self.endpoint)
    }
}

pub fn arc_to_reflection(a: &Arc) -> Result<Reflection> {
    a.check_reduced()?;
    Reflection::new(Word::from_letters(a.crossings.iter().copied())?, a.endpoint)
}

pub fn reflection_to_arc(r: &Reflection) -> Arc {
    Arc { crossings: r.prefix().letters().to_vec(), endpoint: r.core() }
}

/// Removes empty bigons: adjacent repeated crossings, repeatedly, then
/// trailing crossings of the endpoint's own ray.
pub fn canonicalize_arc(raw: &[usize], endpoint: usize) -> Arc {
    let mut buf: Vec<usize> = Vec::with_capacity(raw.len());
    for &x in raw {
        if buf.last() == Some(&x) {
            buf.pop();
        } else {
            buf.push(x);
        }
    }
    while buf.last() == Some(&endpoint) {
        buf.pop();
    }
    Arc { crossings: buf, endpoint }
}

pub fn is_bad_pair(a: &Arc, b: &Arc) -> Result<bool> {
    let (ra, rb) = (arc_to_reflection(a)?, arc_to_reflection(b)?);
    Ok(reflections_form_bad_pair(&ra, &rb))
}

pub fn reflections_form_bad_pair(a: &Reflection, b: &Reflection) -> bool {
    precedes(a, b) || precedes(b, a)
}

/// Positions `i` (0-based) such that entries `i` and `i + 1` form a bad pair.
pub fn bad_pair_positions(tuple: &[Reflection]) -> Vec<usize> {
    tuple
        .windows(2)
        .enumerate()
        .filter(|(_, w)| reflections_form_bad_pair(&w[0], &w[1]))
        .map(|(i, _)| i)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupleVerdict {
    pub bad_pair_count: usize,
    pub product_is_coxeter: bool,
    pub st_pass: bool,
    pub is_yseed: bool,
}

/// Decides whether an ordered tuple of arcs comes from a Y-seed. Signs are
/// assigned as positive up to the (single) bad pair and negative after it.
pub fn tuple_verdict(arcs: &[Arc], gram: &GramMatrix) -> Result<TupleVerdict> {
    let n = gram.rank();
    if arcs.len() != n {
        return Err(Error::WrongArity { expected: n, got: arcs.len() });
    }
    let refls = arcs.iter().map(arc_to_reflection).collect::<Result<Vec<_>>>()?;
    reflection_tuple_verdict(&refls, gram)
}

pub fn reflection_tuple_verdict(refls: &[Reflection], gram: &GramMatrix) -> Result<TupleVerdict> {
    let n = gram.rank();
    if refls.len() != n {
        return Err(Error::WrongArity { expected: n, got: refls.len() });
    }
    if let Some(r) = refls.iter().find(|r| r.max_letter() > n) {
        return Err(Error::IndexOutOfRange { index: r.max_letter(), rank: n });
    }
    let bad = bad_pair_positions(refls);
    let target = Word::coxeter_element(n);
    let product_is_coxeter =
        product(refls.iter().map(Reflection::palindrome).collect::<Vec<_>>().iter()) == target;
    let st_pass = match bad.as_slice() {
        [] | [_] => {
            let split = bad.first().map_or(n, |&p| p + 1);
            let roots: Vec<RootVector> = refls
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    let u = reflection_to_root(r, gram);
                    if i < split {
                        u
                    } else {
                        u.neg()
                    }
                })
                .collect();
            speyer_thomas_check(&roots, gram)?
        }
        _ => false,
    };
    Ok(TupleVerdict {
        bad_pair_count: bad.len(),
        product_is_coxeter,
        st_pass,
        is_yseed: bad.len() <= 1 && st_pass,
    })
}

/// Signs assigned to a tuple with at most one bad pair.
pub fn tuple_signs(tuple: &[Reflection]) -> Vec<RootSign> {
    let split = bad_pair_positions(tuple).first().map_or(tuple.len(), |&p| p + 1);
    (0..tuple.len())
        .map(|i| if i < split { RootSign::Positive } else { RootSign::Negative })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// Moves `r_j` to position `i` past `r_{i+1} ... r_{j-1}` (forward), or undoes
/// that move (inverse). Positions are 1-based and the total product is kept.
///
/// With `M = r_{i+1} ... r_{j-1}`, forward sends `(r_i, r_j)` to
/// `(M r_j M^-1, r_j M^-1 r_i M r_j)`.
pub fn braid_swap(
    tuple: &[Reflection],
    i: usize,
    j: usize,
    direction: Direction,
) -> Result<Vec<Reflection>> {
    let n = tuple.len();
    if !(1 <= i && i < j && j <= n) {
        return Err(Error::IndexOrder { i, j, n });
    }
    let a = tuple[i - 1].palindrome();
    let b = tuple[j - 1].palindrome();
    let m = product(tuple[i..j - 1].iter().map(Reflection::palindrome).collect::<Vec<_>>().iter());
    let m_inv = m.invert();
    let (new_i, new_j) = match direction {
        Direction::Forward => (
            product([&m, &b, &m_inv]),
            product([&b, &m_inv, &a, &m, &b]),
        ),
        Direction::Inverse => (
            product([&a, &m, &b, &m_inv, &a]),
            product([&m_inv, &a, &m]),
        ),
    };
    let mut out = tuple.to_vec();
    out[i - 1] = canonical_reflection(&new_i)?;
    out[j - 1] = canonical_reflection(&new_j)?;
    Ok(out)
}

/// The `gamma`-twin of `beta`: the reflection `r_gamma beta r_gamma`, i.e.
/// `beta = w s_j w^-1` goes to `(r_gamma w) s_j (r_gamma w)^-1`.
pub fn twin(gamma: &Reflection, beta: &Reflection) -> Result<Reflection> {
    if gamma.core() == beta.core() {
        return Err(Error::TwinEndpointClash(beta.core()));
    }
    canonical_reflection(&gamma.conjugate(&beta.palindrome()))
}

/// One replacement made by [`twin_replace_walk`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwinStep {
    /// 1-based position of the arc `gamma_i` that was crossed.
    pub gamma_position: usize,
    pub before: Reflection,
    pub after: Reflection,
    /// Change in reflection word length.
    pub word_len_change: isize,
    /// Change in crossing count (prefix length).
    pub crossing_change: isize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkOutcome {
    pub beta: Reflection,
    /// Number of tuple arcs preceding `beta` in its final slot.
    pub position: usize,
    pub steps: Vec<TwinStep>,
}

/// Inserts `beta0` into a tuple without bad pairs. `beta0` starts in front of
/// the tuple; while it forms a bad pair with its right neighbor `gamma_i` it is
/// replaced by its `gamma_i`-twin, which then sits on the other side of `gamma_i`.
pub fn twin_replace_walk(tuple: &[Reflection], beta0: &Reflection, rank: usize) -> Result<WalkOutcome> {
    if let Some(&p) = bad_pair_positions(tuple).first() {
        return Err(Error::TupleHasBadPair(p + 1));
    }
    let longest = tuple.iter().map(Reflection::word_len).max().unwrap_or(0);
    let bound = 3 * rank * longest;
    if beta0.word_len() <= bound {
        return Err(Error::LengthPreconditionViolated { len: beta0.word_len(), bound });
    }
    let mut beta = beta0.clone();
    let mut steps = Vec::new();
    for (idx, gamma) in tuple.iter().enumerate() {
        if !reflections_form_bad_pair(&beta, gamma) {
            return Ok(WalkOutcome { beta, position: idx, steps });
        }
        let next = twin(gamma, &beta)?;
        if reflections_form_bad_pair(&next, gamma) {
            return Err(Error::AssertionFailure(idx + 1));
        }
        steps.push(TwinStep {
            gamma_position: idx + 1,
            before: beta.clone(),
            after: next.clone(),
            word_len_change: next.word_len() as isize - beta.word_len() as isize,
            crossing_change: next.prefix().len() as isize - beta.prefix().len() as isize,
        });
        beta = next;
    }
    Ok(WalkOutcome { beta, position: tuple.len(), steps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::ExchangeMatrix;
    use crate::roots::{cartan_companion, YSeed};
    use proptest::prelude::*;

    fn refl(letters: &[usize]) -> Reflection {
        canonical_reflection(&Word::from_letters(letters.iter().copied()).unwrap()).unwrap()
    }

    fn arc(c: &[usize], e: usize) -> Arc {
        Arc::new(c.to_vec(), e).unwrap()
    }

    fn g3() -> GramMatrix {
        cartan_companion(&ExchangeMatrix::complete(3, 2)).unwrap()
    }

    #[test]
    fn conversions() {
        assert_eq!(arc_to_reflection(&arc(&[2], 3)).unwrap(), refl(&[2, 3, 2]));
        assert_eq!(
            arc_to_reflection(&arc(&[3, 1, 2, 3], 4)).unwrap(),
            refl(&[3, 1, 2, 3, 4, 3, 2, 1, 3])
        );
        assert_eq!(arc_to_reflection(&arc(&[], 5)).unwrap(), Reflection::generator(5));
        for a in [arc(&[2], 3), arc(&[3, 1, 2, 3], 4), arc(&[], 5)] {
            assert_eq!(reflection_to_arc(&arc_to_reflection(&a).unwrap()), a);
        }
        assert!(matches!(Arc::new(vec![1, 1], 2), Err(Error::Unreduced { .. })));
        assert!(matches!(Arc::new(vec![1, 2], 2), Err(Error::Unreduced { .. })));
        let raw = Arc { crossings: vec![2, 3], endpoint: 3 };
        assert!(matches!(arc_to_reflection(&raw), Err(Error::Unreduced { .. })));
    }

    #[test]
    fn canonicalize() {
        assert_eq!(canonicalize_arc(&[1, 1, 2], 3), arc(&[2], 3));
        assert_eq!(canonicalize_arc(&[2, 3, 3, 2], 1), arc(&[], 1));
        assert_eq!(canonicalize_arc(&[3, 1, 2, 3], 4), arc(&[3, 1, 2, 3], 4));
        assert_eq!(canonicalize_arc(&[1, 2, 2, 1, 3], 3), arc(&[], 3));
    }

    #[test]
    fn bad_pairs() {
        assert!(is_bad_pair(&arc(&[], 1), &arc(&[1], 2)).unwrap());
        assert!(!is_bad_pair(&arc(&[2], 3), &arc(&[3], 2)).unwrap());
        let t = [refl(&[1, 2, 1]), refl(&[1, 3, 1]), refl(&[1])];
        assert_eq!(bad_pair_positions(&t), vec![1]);
    }

    #[test]
    fn verdicts() {
        let g = g3();
        let init = [arc(&[], 1), arc(&[], 2), arc(&[], 3)];
        let v = tuple_verdict(&init, &g).unwrap();
        assert_eq!(
            v,
            TupleVerdict { bad_pair_count: 0, product_is_coxeter: true, st_pass: true, is_yseed: true }
        );

        let mu1 = [arc(&[1], 2), arc(&[1], 3), arc(&[], 1)];
        let v = tuple_verdict(&mu1, &g).unwrap();
        assert_eq!(v.bad_pair_count, 1);
        assert!(v.is_yseed && v.product_is_coxeter);

        let chain = [arc(&[], 1), arc(&[1], 2), arc(&[1, 2], 3)];
        let v = tuple_verdict(&chain, &g).unwrap();
        assert_eq!(v.bad_pair_count, 2);
        assert!(!v.is_yseed);

        assert_eq!(
            tuple_verdict(&init[..2], &g),
            Err(Error::WrongArity { expected: 3, got: 2 })
        );
    }

    #[test]
    fn verdict_of_seed_tuples() {
        let s = YSeed::initial(&ExchangeMatrix::complete(3, 2)).unwrap();
        for path in [vec![1], vec![2], vec![3], vec![2, 1], vec![1, 3, 2], vec![3, 1, 2, 3]] {
            let t = s.mutate_path(&path).unwrap().clockwise_tuple().unwrap();
            let refls: Vec<Reflection> = t.iter().map(|(r, _)| r.clone()).collect();
            let v = reflection_tuple_verdict(&refls, &s.gram).unwrap();
            assert!(v.is_yseed && v.product_is_coxeter, "path {path:?}");
        }
    }

    #[test]
    fn braid_examples() {
        let t = [refl(&[1, 3, 1]), refl(&[1]), refl(&[3, 2, 3])];
        let f = braid_swap(&t, 1, 3, Direction::Forward).unwrap();
        assert_eq!(f, vec![refl(&[1, 3, 2, 3, 1]), refl(&[1]), refl(&[3, 2, 3, 2, 3])]);
        assert_eq!(braid_swap(&f, 1, 3, Direction::Inverse).unwrap(), t.to_vec());

        let t = [refl(&[1]), refl(&[2]), refl(&[3])];
        let inv = braid_swap(&t, 1, 3, Direction::Inverse).unwrap();
        assert_eq!(inv, vec![refl(&[1, 2, 3, 2, 1]), refl(&[2]), refl(&[2, 1, 2])]);
        let prod = |t: &[Reflection]| {
            product(t.iter().map(Reflection::palindrome).collect::<Vec<_>>().iter())
        };
        assert_eq!(prod(&inv), Word::coxeter_element(3));
        assert_eq!(prod(&f), prod(&[refl(&[1, 3, 1]), refl(&[1]), refl(&[3, 2, 3])]));

        assert_eq!(
            braid_swap(&t, 2, 2, Direction::Forward),
            Err(Error::IndexOrder { i: 2, j: 2, n: 3 })
        );
        assert!(braid_swap(&t, 1, 4, Direction::Forward).is_err());
    }

    #[test]
    fn twin_examples() {
        let s1 = Reflection::generator(1);
        assert_eq!(twin(&s1, &Reflection::generator(2)).unwrap(), refl(&[1, 2, 1]));
        assert_eq!(twin(&s1, &refl(&[2, 3, 2])).unwrap(), refl(&[1, 2, 3, 2, 1]));
        assert_eq!(twin(&s1, &refl(&[1, 2, 1])).unwrap(), Reflection::generator(2));
        assert_eq!(twin(&s1, &refl(&[2, 1, 2])), Err(Error::TwinEndpointClash(1)));
    }

    #[test]
    fn walk_examples() {
        let g = refl(&[2, 3, 2]);
        let mut prefix = vec![3];
        prefix.extend([1, 3].repeat(7));
        let long = Reflection::new(Word::from_letters(prefix).unwrap(), 2).unwrap();
        let out = twin_replace_walk(&[g.clone()], &long, 3).unwrap();
        assert_eq!(out.beta, long);
        assert_eq!(out.position, 0);
        assert!(out.steps.is_empty());

        let short = refl(&[1]);
        assert!(matches!(
            twin_replace_walk(&[g.clone()], &short, 3),
            Err(Error::LengthPreconditionViolated { .. })
        ));
        assert_eq!(
            twin_replace_walk(&[refl(&[1]), refl(&[1, 2, 1])], &long, 3),
            Err(Error::TupleHasBadPair(1))
        );

        // beta starts below gamma = s2 s3 s2 and must be carried past it
        let mut prefix = vec![2, 3];
        prefix.extend([1, 3].repeat(7));
        let beta = Reflection::new(Word::from_letters(prefix).unwrap(), 1).unwrap();
        let out = twin_replace_walk(&[g.clone()], &beta, 3).unwrap();
        assert_eq!(out.position, 1);
        assert_eq!(out.steps.len(), 1);
        assert_eq!(out.beta, twin(&g, &beta).unwrap());
        assert!(!reflections_form_bad_pair(&out.beta, &g));
    }

    fn arb_reflection(n: usize, max_prefix: usize) -> impl Strategy<Value = Reflection> {
        (prop::collection::vec(1..=n, 0..=max_prefix), 1..=n).prop_map(|(p, k)| {
            let w = Word::from_letters(p).unwrap();
            canonical_reflection(&w.multiply(&Word::generator(k)).multiply(&w.invert())).unwrap()
        })
    }

    proptest! {
        #[test]
        fn arc_reflection_roundtrip(r in arb_reflection(4, 6)) {
            let a = reflection_to_arc(&r);
            prop_assert!(a.is_reduced());
            prop_assert_eq!(arc_to_reflection(&a).unwrap(), r);
        }

        #[test]
        fn canonicalize_is_idempotent(raw in prop::collection::vec(1usize..=3, 0..10), e in 1usize..=3) {
            let a = canonicalize_arc(&raw, e);
            prop_assert!(a.is_reduced());
            prop_assert_eq!(canonicalize_arc(&a.crossings, e), a);
        }

        #[test]
        fn braid_swap_keeps_product(
            t in prop::collection::vec(arb_reflection(4, 3), 2..6),
            a in 0usize..6, b in 0usize..6, fwd in any::<bool>(),
        ) {
            let n = t.len();
            let (i, j) = (a % n + 1, b % n + 1);
            prop_assume!(i < j);
            let dir = if fwd { Direction::Forward } else { Direction::Inverse };
            let back = if fwd { Direction::Inverse } else { Direction::Forward };
            let out = braid_swap(&t, i, j, dir).unwrap();
            let prod = |t: &[Reflection]| product(t.iter().map(Reflection::palindrome).collect::<Vec<_>>().iter());
            prop_assert_eq!(prod(&out), prod(&t));
            prop_assert_eq!(&out[i..j - 1], &t[i..j - 1]);
            prop_assert_eq!(braid_swap(&out, i, j, back).unwrap(), t.clone());
            if j == i + 1 && fwd {
                let ri = t[i - 1].palindrome();
                let rj = t[j - 1].palindrome();
                prop_assert_eq!(out[i - 1].palindrome(), rj.clone());
                prop_assert_eq!(out[j - 1].palindrome(), product([&rj, &ri, &rj]));
            }
        }

        #[test]
        fn twin_is_involution(g in arb_reflection(4, 4), b in arb_reflection(4, 6)) {
            prop_assume!(g.core() != b.core());
            let t = twin(&g, &b).unwrap();
            prop_assert_eq!(t.core(), b.core());
            prop_assert_eq!(twin(&g, &t).unwrap(), b);
        }
    }
}
