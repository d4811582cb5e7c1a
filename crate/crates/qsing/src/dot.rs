//! DOT rendering: one node per vertex labeled "v{i} [dim]", one edge per
//! arrow bundle with the multiplicity as its label.

use crate::poset::{display_names, TypePoset};
use crate::quiver::{Quiver, QuiverSetting};
use crate::reduction::minimal_type_setting;
use std::fmt::Write;

pub fn quiver_dot(q: &Quiver, dims: Option<&[i64]>) -> String {
    let mut out = String::from("digraph quiver {\n");
    for i in 0..q.n {
        let label = match dims {
            Some(d) => format!("v{i} [{}]", d[i]),
            None => format!("v{i}"),
        };
        writeln!(out, "  n{i} [label=\"{label}\"];").unwrap();
    }
    for i in 0..q.n {
        for j in 0..q.n {
            let m = q.arrows[i][j];
            if m > 0 {
                writeln!(out, "  n{i} -> n{j} [label=\"{m}\"];").unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}

pub fn setting_dot(s: &QuiverSetting) -> String {
    quiver_dot(&s.quiver, Some(&s.dim))
}

/// Poset rendering: nodes grouped by quotient dimension, edges into the
/// minimal element suppressed.
pub fn poset_dot(p: &TypePoset) -> String {
    let names = display_names(p);
    let minimal_hash = p
        .nodes
        .values()
        .find(|t| t.canonical.setting == minimal_type_setting())
        .map(|t| t.canonical.hash.clone());
    let mut out = String::from("digraph types {\n  rankdir=TB;\n");
    let mut idx = std::collections::BTreeMap::new();
    for (k, h) in p.nodes.keys().enumerate() {
        idx.insert(h.clone(), k);
    }
    for (dim, records) in p.by_dim() {
        writeln!(out, "  {{ rank=same; // dimension {dim}").unwrap();
        for t in records {
            let h = &t.canonical.hash;
            writeln!(out, "    n{} [label=\"{}\"];", idx[h], names[h]).unwrap();
        }
        out.push_str("  }\n");
    }
    for (s, t) in &p.edges {
        if minimal_hash.as_deref() == Some(t.as_str()) {
            continue;
        }
        writeln!(out, "  n{} -> n{};", idx[s], idx[t]).unwrap();
    }
    out.push_str("}\n");
    out
}
