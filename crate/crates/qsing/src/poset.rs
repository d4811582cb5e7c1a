//! Enumerate irreducible types by quotient dimension and assemble the
//! degeneration poset.

use crate::canon::canonicalize;
use crate::local::direct_successors;
use crate::quiver::{quotient_dim, Quiver, QuiverSetting};
use crate::reduction::{
    apply_step, is_simple_setting, minimal_type_setting, reduce_to_type, two_loop_setting,
    TypeRecord,
};
use crate::{QError, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// Nodes keyed by canonical hash; edges are direct-successor pairs
/// (source, target). Edges into the minimal element are stored like any
/// other and suppressed only at rendering time.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TypePoset {
    pub nodes: BTreeMap<String, TypeRecord>,
    pub edges: BTreeSet<(String, String)>,
}

impl TypePoset {
    pub fn by_dim(&self) -> BTreeMap<i64, Vec<&TypeRecord>> {
        let mut out: BTreeMap<i64, Vec<&TypeRecord>> = BTreeMap::new();
        for t in self.nodes.values() {
            out.entry(t.dim).or_default().push(t);
        }
        out
    }
}

struct Budget {
    left: u64,
}

impl Budget {
    fn new(cap: Option<u64>) -> Self {
        Budget { left: cap.unwrap_or(u64::MAX) }
    }

    fn spend(&mut self) -> Result<()> {
        if self.left == 0 {
            return Err(QError::Domain("node budget exhausted".into()));
        }
        self.left -= 1;
        Ok(())
    }
}

/// Non-increasing integer vectors of length `n` summing to `total`, entries >= 1.
fn partitions(total: i64, n: usize, max: i64, acc: &mut Vec<i64>, f: &mut impl FnMut(&[i64]) -> Result<()>) -> Result<()> {
    if n == 0 {
        if total == 0 {
            f(acc)?;
        }
        return Ok(());
    }
    let lo = (total + n as i64 - 1) / n as i64; // ceil so the tail stays feasible
    let hi = max.min(total - (n as i64 - 1));
    for first in (lo.max(1)..=hi).rev() {
        acc.push(first);
        partitions(total - first, n - 1, first, acc, f)?;
        acc.pop();
    }
    Ok(())
}

/// Rows with weighted sum exactly `s`: sum_j row[j] * dims[j] = s. The loop
/// entry is forced to 0 when dims[i] = 1 (rule 1 would apply).
fn row_vectors(i: usize, s: i64, dims: &[i64], out: &mut Vec<Vec<i64>>) {
    let n = dims.len();
    let mut row = vec![0i64; n];
    fn rec(j: usize, rem: i64, i: usize, dims: &[i64], row: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        let n = dims.len();
        if j == n {
            if rem == 0 {
                out.push(row.clone());
            }
            return;
        }
        if i == j && dims[i] == 1 {
            rec(j + 1, rem, i, dims, row, out);
            return;
        }
        let w = dims[j];
        for m in 0..=rem / w {
            row[j] = m;
            rec(j + 1, rem - m * w, i, dims, row, out);
        }
        row[j] = 0;
    }
    rec(0, s, i, dims, &mut row, out);
}

fn search_matrices(
    dims: &[i64],
    target: i64,
    budget: &mut Budget,
    found: &mut BTreeMap<String, TypeRecord>,
) -> Result<()> {
    let n = dims.len();
    let need_tail: Vec<i64> = (0..=n)
        .map(|i| (i..n).map(|k| dims[k] * (dims[k] + 1)).sum())
        .collect();
    let mut rows: Vec<Vec<i64>> = Vec::new();
    fn rec(
        i: usize,
        rem: i64,
        dims: &[i64],
        need_tail: &[i64],
        rows: &mut Vec<Vec<i64>>,
        budget: &mut Budget,
        found: &mut BTreeMap<String, TypeRecord>,
    ) -> Result<()> {
        let n = dims.len();
        if i == n {
            if rem != 0 {
                return Ok(());
            }
            // both vertex numbers must be <= -1 everywhere; rows enforce the
            // out-side, check the in-side per column
            for j in 0..n {
                let inflow: i64 = (0..n).map(|k| rows[k][j] * dims[k]).sum();
                if dims[j] - inflow > -1 {
                    return Ok(());
                }
            }
            budget.spend()?;
            let s = QuiverSetting::new(
                Quiver { n, arrows: rows.clone() },
                dims.to_vec(),
            )?;
            if !is_simple_setting(&s)? || apply_step(&s)?.is_some() {
                return Ok(());
            }
            if s == two_loop_setting() {
                return Ok(());
            }
            let canonical = canonicalize(&s);
            let dim = quotient_dim(&canonical.setting)?;
            let name = crate::names::lookup(&canonical.hash);
            found
                .entry(canonical.hash.clone())
                .or_insert(TypeRecord { canonical, dim, name });
            return Ok(());
        }
        // row i's weighted sum: at least dims[i]+1 (out-number <= -1), small
        // enough to leave every later row its minimum
        let smin = dims[i] + 1;
        let smax = (rem - need_tail[i + 1]) / dims[i];
        for s in smin..=smax {
            let mut cand = Vec::new();
            row_vectors(i, s, dims, &mut cand);
            for rv in cand {
                rows.push(rv);
                rec(i + 1, rem - dims[i] * s, dims, need_tail, rows, budget, found)?;
                rows.pop();
            }
        }
        Ok(())
    }
    rec(0, target, dims, &need_tail, &mut rows, budget, found)
}

/// All irreducible simple settings of quotient dimension exactly `d`, up to
/// isomorphism, excluding the smooth two-loop type (counts are counts of
/// singularity types). `d = 0` returns the minimal type, the poset root.
pub fn enumerate_types(d: i64, budget: Option<u64>) -> Result<Vec<TypeRecord>> {
    if d < 0 {
        return Err(QError::Domain("dimension must be >= 0".into()));
    }
    let mut budget = Budget::new(budget);
    let mut found: BTreeMap<String, TypeRecord> = BTreeMap::new();
    if d == 0 {
        let (t, _) = reduce_to_type(&minimal_type_setting())?;
        return Ok(vec![t]);
    }
    // irreducibility forces both numbers <= -1 at every vertex, hence
    // chi(a,a) <= -total and total <= d - 1; the arrow total is then pinned:
    // sum_{i,j} m_ij a_i a_j = d - 1 + sum a_i^2
    for total in 1..d {
        for nv in 1..=total as usize {
            let target_base = d - 1;
            partitions(total, nv, total, &mut Vec::new(), &mut |dims| {
                let sq: i64 = dims.iter().map(|a| a * a).sum();
                search_matrices(dims, target_base + sq, &mut budget, &mut found)
            })?;
        }
    }
    Ok(sorted_records(found))
}

fn sorted_records(found: BTreeMap<String, TypeRecord>) -> Vec<TypeRecord> {
    let mut v: Vec<TypeRecord> = found.into_values().collect();
    v.sort_by(|a, b| {
        (a.canonical.setting.quiver.n, &a.canonical.setting.dim, &a.canonical.setting.quiver.arrows)
            .cmp(&(b.canonical.setting.quiver.n, &b.canonical.setting.dim, &b.canonical.setting.quiver.arrows))
    });
    v
}

/// The isolated-singularity family at dimension `d`: oriented cycles with all
/// dims 1 and arrow multiplicities k_i >= 2. Direct computation of 1 - chi on
/// this family gives d = sum k_i - l + 1 (the displayed closed formula with
/// "+ l" does not match chi and is not used).
pub fn isolated_types(d: i64) -> Result<Vec<TypeRecord>> {
    if d < 3 {
        return Err(QError::Domain("isolated types need dimension >= 3".into()));
    }
    let mut found: BTreeMap<String, TypeRecord> = BTreeMap::new();
    for l in 2..d {
        let total_k = d - 1 + l;
        compositions_min2(total_k, l as usize, &mut Vec::new(), &mut |ks| {
            let n = ks.len();
            let mut q = Quiver::zero(n);
            for (i, &k) in ks.iter().enumerate() {
                q.arrows[i][(i + 1) % n] = k;
            }
            let s = QuiverSetting { quiver: q, dim: vec![1; n] };
            let canonical = canonicalize(&s);
            let dim = quotient_dim(&canonical.setting)?;
            let name = crate::names::lookup(&canonical.hash);
            found
                .entry(canonical.hash.clone())
                .or_insert(TypeRecord { canonical, dim, name });
            Ok(())
        })?;
    }
    Ok(sorted_records(found))
}

fn compositions_min2(total: i64, n: usize, acc: &mut Vec<i64>, f: &mut impl FnMut(&[i64]) -> Result<()>) -> Result<()> {
    if n == 0 {
        if total == 0 {
            f(acc)?;
        }
        return Ok(());
    }
    for first in 2..=total - 2 * (n as i64 - 1) {
        acc.push(first);
        compositions_min2(total - first, n - 1, acc, f)?;
        acc.pop();
    }
    Ok(())
}

/// Nodes for every dimension up to `max_dim`, plus direct-successor edges.
/// Successor targets not already enumerated (smooth types other than the
/// minimal element) are inserted on the fly.
pub fn build_poset(max_dim: i64, budget: Option<u64>) -> Result<TypePoset> {
    let mut nodes: BTreeMap<String, TypeRecord> = BTreeMap::new();
    for d in 0..=max_dim {
        for t in enumerate_types(d, budget)? {
            nodes.insert(t.canonical.hash.clone(), t);
        }
    }
    let mut edges = BTreeSet::new();
    let mut queue: Vec<String> = nodes.keys().cloned().collect();
    while let Some(h) = queue.pop() {
        let t = nodes[&h].clone();
        if t.canonical.setting == minimal_type_setting() {
            continue;
        }
        for succ in direct_successors(&t)? {
            edges.insert((h.clone(), succ.canonical.hash.clone()));
            if !nodes.contains_key(&succ.canonical.hash) {
                queue.push(succ.canonical.hash.clone());
                nodes.insert(succ.canonical.hash.clone(), succ);
            }
        }
    }
    Ok(TypePoset { nodes, edges })
}

/// Auto-labels for unnamed nodes: "{D}#{k}" by canonical order within each
/// dimension. Returns hash -> display name for every node.
pub fn display_names(p: &TypePoset) -> BTreeMap<String, String> {
    let mut out = BTreeMap::new();
    for (dim, mut records) in p.by_dim() {
        records.sort_by_key(|t| {
            (
                t.canonical.setting.quiver.n,
                t.canonical.setting.dim.clone(),
                t.canonical.setting.quiver.arrows.clone(),
            )
        });
        let mut k = 0;
        for t in records {
            let name = t.name.clone().unwrap_or_else(|| {
                k += 1;
                format!("{dim}#{k}")
            });
            out.insert(t.canonical.hash.clone(), name);
        }
    }
    out
}

/// Everything reachable from `hash` along successor edges, including itself.
pub fn downward_closure(p: &TypePoset, hash: &str) -> Result<BTreeSet<String>> {
    if !p.nodes.contains_key(hash) {
        return Err(QError::Domain("unknown poset node".into()));
    }
    let mut seen: BTreeSet<String> = BTreeSet::new();
    let mut stack = vec![hash.to_string()];
    while let Some(h) = stack.pop() {
        if !seen.insert(h.clone()) {
            continue;
        }
        for (s, t) in &p.edges {
            if *s == h && !seen.contains(t) {
                stack.push(t.clone());
            }
        }
    }
    Ok(seen)
}
