//! Depth-first enumeration of the exchange tree with per-seed invariant checks.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::arcs::reflection_tuple_verdict;
use crate::coxeter::{in_one_star, product, separating_nodes, Reflection, Word};
use crate::error::{Error, Result};
use crate::json::{canonical_seed_bytes, JsonInt};
use crate::quiver::ExchangeMatrix;
use crate::roots::{cyclic_sign_runs, root_sign, speyer_thomas_check, RootSign, YSeed};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    TwoComplete,
    WeightMonotone,
    UniqueDecreasing,
    SeparatingNode,
    SignCoherence,
    Seven,
    SpeyerThomas,
    NaturalOrderProduct,
    SignRuns,
    BadPairs,
    InOneStar,
    Tree,
    Oracle,
}

impl Check {
    pub const ALL: [Check; 13] = [
        Check::TwoComplete,
        Check::WeightMonotone,
        Check::UniqueDecreasing,
        Check::SeparatingNode,
        Check::SignCoherence,
        Check::Seven,
        Check::SpeyerThomas,
        Check::NaturalOrderProduct,
        Check::SignRuns,
        Check::BadPairs,
        Check::InOneStar,
        Check::Tree,
        Check::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::TwoComplete => "two-complete",
            Check::WeightMonotone => "weight-monotone",
            Check::UniqueDecreasing => "unique-decreasing",
            Check::SeparatingNode => "separating-node",
            Check::SignCoherence => "sign-coherence",
            Check::Seven => "seven",
            Check::SpeyerThomas => "speyer-thomas",
            Check::NaturalOrderProduct => "natural-order-product",
            Check::SignRuns => "sign-runs",
            Check::BadPairs => "bad-pairs",
            Check::InOneStar => "in-one-star",
            Check::Tree => "tree",
            Check::Oracle => "oracle",
        }
    }

    /// `"all"` or a comma-separated list of check names.
    pub fn parse_list(s: &str) -> Result<BTreeSet<Check>> {
        if s.trim() == "all" {
            return Ok(Check::ALL.into_iter().collect());
        }
        s.split(',').filter(|t| !t.trim().is_empty()).map(|t| t.trim().parse()).collect()
    }
}

impl FromStr for Check {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown check {s:?}")))
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub path: Vec<usize>,
    pub invariant: String,
}

/// A seed whose basepoint rotation of the natural order did not multiply to
/// the Coxeter element but another rotation did.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fallback {
    pub path: Vec<usize>,
    pub rotation: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExplorationReport {
    pub seeds_visited: u64,
    pub max_weight: JsonInt,
    pub violations: Vec<Violation>,
    pub depth: usize,
    pub fallbacks: Vec<Fallback>,
    pub checks: Vec<String>,
}

/// Number of seeds within `depth` mutations: `1 + n ((n-1)^d - 1) / (n - 2)`.
pub fn tree_size(n: usize, depth: usize) -> u128 {
    let mut total = 1u128;
    let mut level = 1u128;
    for d in 0..depth {
        level *= if d == 0 { n as u128 } else { n.saturating_sub(1) as u128 };
        total += level;
    }
    total
}

struct Explorer<'a, F> {
    initial: ExchangeMatrix,
    checks: &'a BTreeSet<Check>,
    depth: usize,
    sink: F,
    seen: HashSet<[u8; 32]>,
    report: ExplorationReport,
}

fn bool_check(r: Result<bool>) -> bool {
    r.unwrap_or(false)
}

impl<F: FnMut(&YSeed) -> Result<()>> Explorer<'_, F> {
    fn visit(&mut self, seed: &YSeed) -> Result<()> {
        self.report.seeds_visited += 1;
        let w = seed.b.max_weight();
        if w > self.report.max_weight.0 {
            self.report.max_weight = JsonInt(w);
        }
        (self.sink)(seed)?;
        for check in self.checks.clone() {
            if !self.passes(check, seed) {
                self.report
                    .violations
                    .push(Violation { path: seed.path.clone(), invariant: check.name().to_string() });
            }
        }
        if seed.path.len() == self.depth {
            return Ok(());
        }
        for k in 1..=seed.rank() {
            if seed.path.last() == Some(&k) {
                continue;
            }
            let child = seed.mutate(k)?;
            if self.checks.contains(&Check::Oracle) && seed.mutate_by_extended_matrix(k)? != child {
                self.report
                    .violations
                    .push(Violation { path: child.path.clone(), invariant: Check::Oracle.name().into() });
            }
            self.visit(&child)?;
        }
        Ok(())
    }

    fn passes(&mut self, check: Check, s: &YSeed) -> bool {
        let acyclic = s.b.is_acyclic();
        match check {
            Check::TwoComplete => s.b.is_two_complete(),
            Check::WeightMonotone => {
                let n = s.rank();
                (1..=n).all(|i| {
                    (1..=n).all(|j| s.b.entry(i, j).abs() >= self.initial.entry(i, j).abs())
                })
            }
            Check::UniqueDecreasing => {
                s.b.decreasing_directions().len() == usize::from(!acyclic)
            }
            Check::SeparatingNode => bool_check(
                s.reflections().map(|r| separating_nodes(&r).len() == usize::from(!acyclic)),
            ),
            Check::SignCoherence => s.c.iter().all(|u| matches!(root_sign(u), Ok(RootSign::Positive | RootSign::Negative))),
            Check::Seven => {
                let n = s.rank();
                (1..=n).all(|i| {
                    (1..=n).filter(|&j| j != i).all(|j| {
                        s.gram
                            .inner(&s.c[i - 1], &s.c[j - 1])
                            .map(|v| v.abs() == s.b.entry(i, j).abs())
                            .unwrap_or(false)
                    })
                })
            }
            Check::SpeyerThomas => bool_check(speyer_thomas_check(&s.c, &s.gram)),
            Check::NaturalOrderProduct => match self.natural_order_product(s) {
                Ok(Some(0)) => true,
                Ok(Some(rotation)) => {
                    self.report.fallbacks.push(Fallback { path: s.path.clone(), rotation });
                    true
                }
                _ => false,
            },
            Check::SignRuns => bool_check(s.natural_order().and_then(|order| {
                let signs = order.iter().map(|&v| root_sign(&s.c[v - 1])).collect::<Result<Vec<_>>>()?;
                Ok(cyclic_sign_runs(&signs) <= 2)
            })),
            Check::BadPairs => bool_check(s.clockwise_tuple().and_then(|t| {
                let refls: Vec<Reflection> = t.into_iter().map(|(r, _)| r).collect();
                let v = reflection_tuple_verdict(&refls, &s.gram)?;
                Ok(v.bad_pair_count <= 1 && v.is_yseed)
            })),
            Check::InOneStar => !acyclic || bool_check(s.reflections().map(|r| in_one_star(&r))),
            Check::Tree => {
                let digest: [u8; 32] = Sha256::digest(canonical_seed_bytes(s)).into();
                self.seen.insert(digest)
            }
            Check::Oracle => true,
        }
    }

    /// Offset, relative to the basepoint rotation, of the first rotation of
    /// the natural-order tuple whose product is `s_1 ... s_n`.
    fn natural_order_product(&self, s: &YSeed) -> Result<Option<usize>> {
        let tuple: Vec<Word> = s.clockwise_tuple()?.iter().map(|(r, _)| r.palindrome()).collect();
        let target = Word::coxeter_element(s.rank());
        let n = tuple.len();
        Ok((0..n).find(|&off| {
            product(tuple[off..].iter().chain(&tuple[..off])) == target
        }))
    }
}

/// Visits every seed within `depth` mutations of the initial seed of `b`,
/// depth first with directions ascending, handing each to `sink` before its
/// children and running the selected checks on it.
pub fn explore<F>(b: &ExchangeMatrix, depth: usize, checks: &BTreeSet<Check>, sink: F) -> Result<ExplorationReport>
where
    F: FnMut(&YSeed) -> Result<()>,
{
    let initial = YSeed::initial(b)?;
    let mut ex = Explorer {
        initial: b.clone(),
        checks,
        depth,
        sink,
        seen: HashSet::new(),
        report: ExplorationReport {
            seeds_visited: 0,
            max_weight: JsonInt(BigInt::default()),
            violations: Vec::new(),
            depth,
            fallbacks: Vec::new(),
            checks: checks.iter().map(|c| c.name().to_string()).collect(),
        },
    };
    ex.visit(&initial)?;
    Ok(ex.report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all() -> BTreeSet<Check> {
        Check::ALL.into_iter().collect()
    }

    #[test]
    fn tree_sizes() {
        assert_eq!(tree_size(3, 0), 1);
        assert_eq!(tree_size(3, 2), 10);
        assert_eq!(tree_size(3, 8), 766);
        assert_eq!(tree_size(4, 5), 485);
        assert_eq!(tree_size(2, 4), 9);
    }

    #[test]
    fn parse_checks() {
        assert_eq!(Check::parse_list("all").unwrap().len(), 13);
        let some = Check::parse_list("seven,tree").unwrap();
        assert_eq!(some, BTreeSet::from([Check::Seven, Check::Tree]));
        assert!(Check::parse_list("seven,bogus").is_err());
        for c in Check::ALL {
            assert_eq!(c.name().parse::<Check>().unwrap(), c);
        }
    }

    #[test]
    fn small_exploration() {
        let b = ExchangeMatrix::complete(3, 2);
        let mut streamed = Vec::new();
        let r = explore(&b, 3, &all(), |s| {
            streamed.push(s.path.clone());
            Ok(())
        })
        .unwrap();
        assert_eq!(r.seeds_visited, 22);
        assert_eq!(streamed.len(), 22);
        assert_eq!(streamed[..3], [vec![], vec![1], vec![1, 2]]);
        assert!(r.violations.is_empty(), "{:?}", r.violations);
        assert!(r.fallbacks.is_empty());

        let r0 = explore(&b, 0, &all(), |_| Ok(())).unwrap();
        assert_eq!(r0.seeds_visited, 1);
        assert_eq!(r0.max_weight, JsonInt(BigInt::from(2)));
    }

    #[test]
    fn rejects_bad_input() {
        let cyc = ExchangeMatrix::complete(3, 2).mutate(2).unwrap();
        assert_eq!(explore(&cyc, 1, &all(), |_| Ok(())).unwrap_err(), Error::NotAcyclic);
    }
}
