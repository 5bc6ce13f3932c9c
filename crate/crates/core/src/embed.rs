//! Deciding whether a crossing sequence is realized by a simple arc.
//!
//! Cut the disc open along all rays. The result is a disc whose boundary,
//! read counterclockwise, is
//!
//! `b, R_n (top to bottom), p_n, L_n (bottom to top), ..., R_1, p_1, L_1`
//!
//! where `L_s` and `R_s` are the two sides of the ray `l_s`. An arc with `m`
//! crossings becomes `m + 1` chords of the cut disc: from `b` to the entry copy
//! of the first crossing, from each exit copy to the next entry copy, and from
//! the last exit copy to `p_endpoint`. Each crossing goes left-to-right or
//! right-to-left and sits at some height on its ray. The arc is simple iff
//! some choice of directions and heights yields pairwise non-interleaving chords.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::arcs::Arc;
use crate::error::{Error, Result};

pub const DEFAULT_CROSSING_CAP: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    /// Enters from the left side of the ray and leaves on the right side.
    #[serde(rename = "LR")]
    LeftToRight,
    #[serde(rename = "RL")]
    RightToLeft,
}

/// A simple realization: a direction per crossing and, per ray, the crossing
/// positions (1-based along the arc) listed from bottom (puncture) to top.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingWitness {
    pub sides: Vec<Side>,
    pub heights: BTreeMap<usize, Vec<usize>>,
}

/// Size of the search space and how it was covered.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    /// `2^m * prod_s (m_s)!`, the number of complete configurations.
    pub space: u64,
    /// Complete configurations tested chord by chord.
    pub leaves_checked: u64,
    /// Configurations discarded together with a partial assignment that
    /// already had interleaving chords.
    pub leaves_pruned: u64,
    /// Partial assignments visited.
    pub nodes: u64,
}

impl SearchStats {
    /// Whether every configuration is accounted for.
    pub fn exhausted(&self) -> bool {
        self.leaves_checked + self.leaves_pruned == self.space
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingVerdict {
    pub embeddable: bool,
    pub witness: Option<EmbeddingWitness>,
    pub stats: SearchStats,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Point {
    Base,
    Puncture(usize),
    /// Crossing index (0-based) and whether this is the entry copy.
    Copy(usize, bool),
}

/// Positions along the cut-disc boundary for the current partial assignment.
struct Layout<'a> {
    arc: &'a Arc,
    top: usize,
    sides: &'a [Side],
    height: &'a [usize],
    count: &'a BTreeMap<usize, usize>,
}

impl Layout<'_> {
    fn key(&self, p: Point) -> (usize, usize, usize) {
        match p {
            Point::Base => (0, 0, 0),
            Point::Puncture(s) => (self.top + 1 - s, 1, 0),
            Point::Copy(c, entry) => {
                let s = self.arc.crossings[c];
                let on_left = (self.sides[c] == Side::LeftToRight) == entry;
                let h = self.height[c];
                if on_left {
                    (self.top + 1 - s, 2, h)
                } else {
                    (self.top + 1 - s, 0, self.count[&s] - 1 - h)
                }
            }
        }
    }
}

fn chords(arc: &Arc) -> Vec<(Point, Point)> {
    let m = arc.crossings.len();
    if m == 0 {
        return vec![(Point::Base, Point::Puncture(arc.endpoint))];
    }
    let mut out = vec![(Point::Base, Point::Copy(0, true))];
    out.extend((1..m).map(|j| (Point::Copy(j - 1, false), Point::Copy(j, true))));
    out.push((Point::Copy(m - 1, false), Point::Puncture(arc.endpoint)));
    out
}

fn interleave<K: Ord + Copy>(a: (K, K), b: (K, K)) -> bool {
    let (a0, a1) = if a.0 < a.1 { a } else { (a.1, a.0) };
    let inside = |k: K| a0.cmp(&k) == Ordering::Less && k.cmp(&a1) == Ordering::Less;
    inside(b.0) != inside(b.1)
}

fn factorial(k: usize) -> u64 {
    (1..=k as u64).product()
}

struct Search<'a> {
    arc: &'a Arc,
    top: usize,
    rays: Vec<usize>,
    /// Crossing indices on each ray, in `rays` order.
    members: Vec<Vec<usize>>,
    count: BTreeMap<usize, usize>,
    chords: Vec<(Point, Point)>,
    /// Chords grouped by the ray (index into `rays`) whose assignment completes them.
    ready_at: Vec<Vec<usize>>,
    /// `tail[t]` = product of `m_u!` over rays after `t`.
    tail: Vec<u64>,
    stats: SearchStats,
}

impl<'a> Search<'a> {
    fn new(arc: &'a Arc) -> Self {
        let rays: Vec<usize> = arc.crossings.iter().copied().sorted().dedup().collect();
        let members: Vec<Vec<usize>> = rays
            .iter()
            .map(|&s| (0..arc.crossings.len()).filter(|&c| arc.crossings[c] == s).collect())
            .collect();
        let count = rays.iter().zip(&members).map(|(&s, m)| (s, m.len())).collect();
        let chords = chords(arc);
        let ray_pos = |p: Point| match p {
            Point::Copy(c, _) => rays.binary_search(&arc.crossings[c]).ok(),
            _ => None,
        };
        let mut ready_at = vec![Vec::new(); rays.len()];
        for (idx, &(p, q)) in chords.iter().enumerate() {
            if let Some(t) = ray_pos(p).max(ray_pos(q)) {
                ready_at[t].push(idx);
            }
        }
        let mut tail = vec![1u64; rays.len()];
        for t in (0..rays.len().saturating_sub(1)).rev() {
            tail[t] = tail[t + 1] * factorial(members[t + 1].len());
        }
        let space = (1u64 << arc.crossings.len())
            * members.iter().map(|m| factorial(m.len())).product::<u64>();
        Search {
            arc,
            top: arc.max_index(),
            rays,
            members,
            count,
            chords,
            ready_at,
            tail,
            stats: SearchStats { space, ..SearchStats::default() },
        }
    }

    fn run(&mut self) -> Option<EmbeddingWitness> {
        let m = self.arc.crossings.len();
        let mut height = vec![0usize; m];
        for mask in 0u64..(1u64 << m) {
            let sides: Vec<Side> = (0..m)
                .map(|c| if mask >> c & 1 == 0 { Side::LeftToRight } else { Side::RightToLeft })
                .collect();
            self.stats.nodes += 1;
            if self.assign(0, &sides, &mut height) {
                return Some(self.witness(&sides, &height));
            }
        }
        None
    }

    fn witness(&self, sides: &[Side], height: &[usize]) -> EmbeddingWitness {
        let heights = self
            .rays
            .iter()
            .zip(&self.members)
            .map(|(&s, members)| {
                let order = members.iter().sorted_by_key(|&&c| height[c]).map(|&c| c + 1).collect();
                (s, order)
            })
            .collect();
        EmbeddingWitness { sides: sides.to_vec(), heights }
    }

    /// Tries every height order for ray `t` and beyond.
    fn assign(&mut self, t: usize, sides: &[Side], height: &mut [usize]) -> bool {
        if t == self.rays.len() {
            self.stats.leaves_checked += 1;
            return true;
        }
        let members = self.members[t].clone();
        for perm in members.iter().permutations(members.len()) {
            self.stats.nodes += 1;
            for (h, &&c) in perm.iter().enumerate() {
                height[c] = h;
            }
            if !self.consistent_through(t, sides, height) {
                self.stats.leaves_pruned += self.tail[t];
                continue;
            }
            if self.assign(t + 1, sides, height) {
                return true;
            }
        }
        false
    }

    /// Checks chords completed at ray `t` against all chords completed so far.
    fn consistent_through(&self, t: usize, sides: &[Side], height: &[usize]) -> bool {
        let layout = Layout { arc: self.arc, top: self.top, sides, height, count: &self.count };
        let key = |idx: usize| {
            let (p, q) = self.chords[idx];
            (layout.key(p), layout.key(q))
        };
        for &new in &self.ready_at[t] {
            let a = key(new);
            for &old in self.ready_at[..=t].iter().flatten() {
                if old != new && interleave(a, key(old)) {
                    return false;
                }
            }
        }
        true
    }
}

/// Exhaustive search for a simple realization of a reduced crossing sequence.
/// At the leaf level every chord pair has been compared, so a returned
/// witness is valid and a negative answer covers the whole space.
pub fn is_embeddable(arc: &Arc, cap: usize) -> Result<EmbeddingVerdict> {
    if !arc.is_reduced() {
        return Err(Error::Unreduced { crossings: arc.crossings.clone(), endpoint: arc.endpoint });
    }
    if arc.crossings.len() > cap {
        return Err(Error::CapExceeded { len: arc.crossings.len(), cap });
    }
    let mut search = Search::new(arc);
    let witness = search.run();
    Ok(EmbeddingVerdict { embeddable: witness.is_some(), witness, stats: search.stats })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Label {
    Base,
    Puncture(usize),
    /// 1-based crossing position, and whether this point is on the left side.
    Mark(usize, bool),
}

/// Re-checks a witness without the search code: lays out the cut-disc
/// boundary as an explicit list and tests every pair of chords.
pub fn check_witness(arc: &Arc, w: &EmbeddingWitness) -> bool {
    let m = arc.crossings.len();
    if w.sides.len() != m {
        return false;
    }
    for (&s, order) in &w.heights {
        let mut expected: Vec<usize> =
            (1..=m).filter(|&c| arc.crossings[c - 1] == s).collect();
        let mut got = order.clone();
        got.sort_unstable();
        expected.sort_unstable();
        if got != expected || expected.is_empty() {
            return false;
        }
    }
    if arc.crossings.iter().any(|s| !w.heights.contains_key(s)) {
        return false;
    }

    let top = arc.max_index();
    let mut boundary = vec![Label::Base];
    for s in (1..=top).rev() {
        let empty = Vec::new();
        let order = w.heights.get(&s).unwrap_or(&empty);
        boundary.extend(order.iter().rev().map(|&c| Label::Mark(c, false)));
        boundary.push(Label::Puncture(s));
        boundary.extend(order.iter().map(|&c| Label::Mark(c, true)));
    }
    let locate = |l: Label| boundary.iter().position(|&x| x == l);
    let mark = |c: usize, entry: bool| {
        let left = match w.sides[c - 1] {
            Side::LeftToRight => entry,
            Side::RightToLeft => !entry,
        };
        Label::Mark(c, left)
    };
    let mut ends = vec![Label::Base];
    for c in 1..=m {
        ends.push(mark(c, true));
        ends.push(mark(c, false));
    }
    ends.push(Label::Puncture(arc.endpoint));
    let mut segs = Vec::new();
    for pair in ends.chunks(2) {
        match (locate(pair[0]), locate(pair[1])) {
            (Some(x), Some(y)) => segs.push((x.min(y), x.max(y))),
            _ => return false,
        }
    }
    for (i, &(a0, a1)) in segs.iter().enumerate() {
        for &(b0, b1) in &segs[i + 1..] {
            let between = |x: usize| a0 < x && x < a1;
            if between(b0) != between(b1) {
                return false;
            }
        }
    }
    true
}
