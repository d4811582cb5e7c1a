//! Canonical forms for quiver settings: two settings are isomorphic
//! (vertex relabeling preserving multiplicities and dimensions) iff their
//! canonical forms are identical.

use crate::quiver::{Quiver, QuiverSetting};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CanonicalSetting {
    pub setting: QuiverSetting,
    pub hash: String,
}

impl CanonicalSetting {
    pub fn dim_total(&self) -> i64 {
        self.setting.total_dim()
    }
}

type Key = (i64, i64, Vec<(usize, i64)>, Vec<(usize, i64)>, usize);

fn refine_classes(s: &QuiverSetting) -> Vec<Key> {
    let n = s.quiver.n;
    let m = &s.quiver.arrows;
    let mut cls = vec![0usize; n];
    let mut keys: Vec<Key> = Vec::new();
    // Iteration count is capped: on symmetric quivers the partition can
    // oscillate between relabelings, and n+1 equivariant rounds suffice.
    for _ in 0..=n {
        keys = (0..n)
            .map(|i| {
                let mut outk: Vec<(usize, i64)> = (0..n)
                    .filter(|&j| j != i && m[i][j] > 0)
                    .map(|j| (cls[j], m[i][j]))
                    .collect();
                outk.sort_unstable();
                let mut ink: Vec<(usize, i64)> = (0..n)
                    .filter(|&j| j != i && m[j][i] > 0)
                    .map(|j| (cls[j], m[j][i]))
                    .collect();
                ink.sort_unstable();
                (s.dim[i], m[i][i], outk, ink, cls[i])
            })
            .collect();
        let mut uniq: Vec<&Key> = keys.iter().collect();
        uniq.sort_unstable();
        uniq.dedup();
        let ncls: Vec<usize> = keys
            .iter()
            .map(|k| uniq.binary_search(&k).unwrap())
            .collect();
        if ncls == cls {
            break;
        }
        cls = ncls;
    }
    keys
}

fn permute(s: &QuiverSetting, pos: &[usize]) -> (Vec<i64>, Vec<Vec<i64>>) {
    let n = s.quiver.n;
    let dim = (0..n).map(|i| s.dim[pos[i]]).collect();
    let arrows = (0..n)
        .map(|i| (0..n).map(|j| s.quiver.arrows[pos[i]][pos[j]]).collect())
        .collect();
    (dim, arrows)
}

fn for_each_cell_perm(cells: &[Vec<usize>], f: &mut impl FnMut(&[usize])) {
    fn rec(cells: &[Vec<usize>], idx: usize, acc: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if idx == cells.len() {
            f(acc);
            return;
        }
        let cell = &cells[idx];
        let mut perm: Vec<usize> = cell.clone();
        let k = perm.len();
        // lexicographic permutation walk over the cell
        loop {
            acc.extend_from_slice(&perm);
            rec(cells, idx + 1, acc, f);
            acc.truncate(acc.len() - k);
            // next_permutation
            if k < 2 {
                break;
            }
            let Some(i) = (0..k - 1).rev().find(|&i| perm[i] < perm[i + 1]) else {
                break;
            };
            let j = (i + 1..k).rev().find(|&j| perm[j] > perm[i]).unwrap();
            perm.swap(i, j);
            perm[i + 1..].reverse();
        }
    }
    rec(cells, 0, &mut Vec::new(), f)
}

/// Canonical representative: refine vertex classes, then take the
/// lexicographically least (dim, arrows) over all within-cell relabelings.
pub fn canonicalize(s: &QuiverSetting) -> CanonicalSetting {
    let n = s.quiver.n;
    let keys = refine_classes(s);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| keys[a].cmp(&keys[b]).then(a.cmp(&b)));
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match cells.last_mut() {
            Some(cell) if keys[cell[0]] == keys[v] => cell.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let mut best: Option<(Vec<i64>, Vec<Vec<i64>>)> = None;
    for_each_cell_perm(&cells, &mut |pos| {
        let cand = permute(s, pos);
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
    });
    let (dim, arrows) = best.unwrap();
    let setting = QuiverSetting {
        quiver: Quiver { n, arrows },
        dim,
    };
    let hash = digest(&setting);
    CanonicalSetting { setting, hash }
}

fn digest(s: &QuiverSetting) -> String {
    let mut h = Sha256::new();
    h.update(s.quiver.n.to_le_bytes());
    for &d in &s.dim {
        h.update(d.to_le_bytes());
    }
    for row in &s.quiver.arrows {
        for &m in row {
            h.update(m.to_le_bytes());
        }
    }
    let out = h.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}
