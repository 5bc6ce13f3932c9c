//! Graphviz output for the exchange tree and for a patch of the Cayley tree.

use std::fmt::Write as _;

use itertools::Itertools;

use crate::coxeter::{Reflection, Word};
use crate::error::{Error, Result};
use crate::explore::tree_size;
use crate::quiver::ExchangeMatrix;
use crate::roots::{RootSign, YSeed};

pub const DOT_NODE_CAP: usize = 5000;

fn check_cap(what: &str, nodes: u128, cap: usize) -> Result<()> {
    if nodes > cap as u128 {
        return Err(Error::TooManyNodes { what: what.to_string(), cap });
    }
    Ok(())
}

fn path_label(path: &[usize]) -> String {
    if path.is_empty() {
        "e".into()
    } else {
        path.iter().join(".")
    }
}

/// Seeds within `depth` mutations, one node per seed, edges labeled by the
/// mutation direction.
pub fn exchange_tree_dot(b: &ExchangeMatrix, depth: usize, cap: usize) -> Result<String> {
    check_cap("exchange tree", tree_size(b.rank(), depth), cap)?;
    let root = YSeed::initial(b)?;
    let mut out = String::from("digraph exchange_tree {\n  node [shape=box, fontname=\"monospace\"];\n");
    let mut stack = vec![root];
    while let Some(seed) = stack.pop() {
        let id = path_label(&seed.path);
        let cs = seed.c.iter().map(|u| u.to_string()).join(" ");
        writeln!(out, "  \"{id}\" [label=\"{id}\\n{cs}\"];").unwrap();
        if seed.path.len() == depth {
            continue;
        }
        for k in (1..=seed.rank()).rev() {
            if seed.path.last() == Some(&k) {
                continue;
            }
            let child = seed.mutate(k)?;
            writeln!(out, "  \"{id}\" -> \"{}\" [label=\"{k}\"];", path_label(&child.path)).unwrap();
            stack.push(child);
        }
    }
    out.push_str("}\n");
    Ok(out)
}

fn word_id(w: &Word) -> String {
    format!("w{}", w.letters().iter().join("_"))
}

/// The ball of the given radius around the identity in the Cayley tree of the
/// universal Coxeter group, with the nodes of the seed's reflections drawn on
/// their edges: positive roots filled green, negative roots unfilled red. The
/// radius is enlarged if needed to reach every node.
pub fn cayley_fragment_dot(seed: &YSeed, radius: usize, cap: usize) -> Result<String> {
    let n = seed.rank();
    let refls: Vec<(Reflection, RootSign)> = seed.ordered_tuple()?;
    let reach = refls.iter().map(|(r, _)| r.prefix().len() + 1).max().unwrap_or(0);
    let radius = radius.max(reach);
    let vertices = tree_size(n, radius);
    check_cap("Cayley fragment", vertices + refls.len() as u128, cap)?;

    let mut out = String::from(
        "graph cayley_fragment {\n  node [shape=point, width=0.08];\n  \"w\" [shape=circle, label=\"e\", width=0.3];\n",
    );
    let mut frontier = vec![Word::identity()];
    let marked = |u: &Word, v: &Word| {
        refls.iter().find(|(r, _)| {
            let (a, b) = r.edge();
            (&a == u && &b == v) || (&a == v && &b == u)
        })
    };
    for _ in 0..radius {
        let mut next = Vec::new();
        for w in &frontier {
            for i in 1..=n {
                if w.last() == Some(i) {
                    continue;
                }
                let v = w.times(i);
                match marked(w, &v) {
                    Some((r, sign)) => {
                        let node = format!("r{}", r.palindrome().letters().iter().join("_"));
                        let style = match sign {
                            RootSign::Positive => "style=filled, fillcolor=green, color=green",
                            _ => "style=solid, color=red",
                        };
                        writeln!(
                            out,
                            "  \"{node}\" [shape=circle, width=0.25, label=\"\", tooltip=\"{r}\", {style}];"
                        )
                        .unwrap();
                        writeln!(out, "  \"{}\" -- \"{node}\" [label=\"{i}\"];", word_id(w)).unwrap();
                        writeln!(out, "  \"{node}\" -- \"{}\";", word_id(&v)).unwrap();
                    }
                    None => {
                        writeln!(out, "  \"{}\" -- \"{}\" [label=\"{i}\"];", word_id(w), word_id(&v))
                            .unwrap();
                    }
                }
                next.push(v);
            }
        }
        frontier = next;
    }
    out.push_str("}\n");
    Ok(out)
}
