//! Breadth-first search of the exchange tree for seeds containing given roots.

use serde::{Deserialize, Serialize};

use crate::arcs::{arc_to_reflection, Arc};
use crate::embed::is_embeddable;
use crate::error::{Error, Result};
use crate::quiver::ExchangeMatrix;
use crate::roots::{reflection_to_root, root_sign, RootSign, RootVector, YSeed};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", content = "value", rename_all = "snake_case")]
pub enum SearchOutcome {
    Found(Vec<usize>),
    NotFoundWithinDepth(usize),
}

impl SearchOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }
}

/// First seed in breadth-first order (directions ascending) within `depth`
/// mutations of the initial seed satisfying `pred`. A mutation is never
/// followed by the same mutation, so each seed of the tree is visited once.
pub fn bfs_find<F>(initial: &YSeed, depth: usize, mut pred: F) -> Result<Option<YSeed>>
where
    F: FnMut(&YSeed) -> bool,
{
    if pred(initial) {
        return Ok(Some(initial.clone()));
    }
    let n = initial.rank();
    let mut level = vec![initial.clone()];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(level.len() * n.saturating_sub(1).max(1));
        for seed in &level {
            for k in 1..=n {
                if seed.path.last() == Some(&k) {
                    continue;
                }
                let child = seed.mutate(k)?;
                if pred(&child) {
                    return Ok(Some(child));
                }
                next.push(child);
            }
        }
        level = next;
    }
    Ok(None)
}

fn positive(u: &RootVector) -> Result<RootVector> {
    match root_sign(u)? {
        RootSign::Positive => Ok(u.clone()),
        RootSign::Negative => Ok(u.neg()),
        RootSign::Mixed => Err(Error::SignIncoherent(u.0.iter().map(|x| x.to_string()).collect())),
    }
}

/// Looks for a seed whose c-vectors contain the positive representative of
/// `u`. Positive c-vectors are exactly the real Schur roots.
pub fn schur_by_search(u: &RootVector, initial: &ExchangeMatrix, depth: usize) -> Result<SearchOutcome> {
    if depth == 0 {
        return Err(Error::BadDepth);
    }
    let start = YSeed::initial(initial)?;
    if u.dim() != start.rank() {
        return Err(Error::DimensionMismatch { expected: start.rank(), got: u.dim() });
    }
    let target = positive(u)?;
    Ok(match bfs_find(&start, depth, |s| s.contains_root(&target))? {
        Some(seed) => SearchOutcome::Found(seed.path),
        None => SearchOutcome::NotFoundWithinDepth(depth),
    })
}

/// A seed containing the root of an embeddable arc.
pub fn complete_arc(a: &Arc, initial: &ExchangeMatrix, depth: usize, cap: usize) -> Result<YSeed> {
    let r = arc_to_reflection(a)?;
    if !is_embeddable(a, cap)?.embeddable {
        return Err(Error::NotEmbeddable);
    }
    if depth == 0 {
        return Err(Error::BadDepth);
    }
    let start = YSeed::initial(initial)?;
    if r.max_letter() > start.rank() {
        return Err(Error::IndexOutOfRange { index: r.max_letter(), rank: start.rank() });
    }
    let target = reflection_to_root(&r, &start.gram);
    bfs_find(&start, depth, |s| s.contains_root(&target))?.ok_or(Error::DepthExhausted(depth))
}

/// A seed whose c-vectors contain every given root up to sign.
pub fn find_seed_containing(
    roots: &[RootVector],
    initial: &ExchangeMatrix,
    depth: usize,
) -> Result<Option<YSeed>> {
    let start = YSeed::initial(initial)?;
    let targets = roots.iter().map(positive).collect::<Result<Vec<_>>>()?;
    bfs_find(&start, depth, |s| {
        targets.iter().all(|t| s.contains_root(t) || s.contains_root(&t.neg()))
    })
}
