//! Graphviz output. Edges are Hasse covers pointing upward; elements of equal
//! height share a rank.

use std::fmt::Write;

use convlab_core::{Poset, Topology};

use crate::error::Result;

pub fn hasse_dot(p: &Poset, name: &str) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(name)).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=circle];").unwrap();
    let heights = p.heights();
    let top = heights.iter().copied().max().unwrap_or(0);
    for h in 0..=top {
        let row: Vec<String> = p.elements().filter(|&x| heights[x] == h).map(|x| quote(p.label(x))).collect();
        if !row.is_empty() {
            writeln!(out, "  {{ rank=same; {}; }}", row.join("; ")).unwrap();
        }
    }
    for (x, y) in p.covers() {
        writeln!(out, "  {} -> {};", quote(p.label(x)), quote(p.label(y))).unwrap();
    }
    out.push_str("}\n");
    out
}

/// The specialisation order of a T0 topology on the carrier of `p`, drawn
/// with `p`'s labels.
pub fn specialization_dot(p: &Poset, t: &Topology, name: &str) -> Result<String> {
    let spec = t.specialization_poset()?.with_labels(p.labels().iter().cloned())?;
    Ok(hasse_dot(&spec, name))
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}
