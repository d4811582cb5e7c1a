//! The simple-setting criterion and the three reduction steps, iterated to
//! the unique irreducible type; smoothness test for types.

use crate::canon::{canonicalize, CanonicalSetting};
use crate::quiver::{
    eps, is_oriented_cycle, is_strongly_connected, quotient_dim, restrict_support, ringel, Quiver,
    QuiverSetting,
};
use crate::{QError, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StepKind {
    /// Drop all loops at a dim-1 vertex.
    RemoveLoopsDim1,
    /// Delete a loop-free vertex with a zero number, cabling arrows through it.
    CableVertex,
    /// Trade a unique loop for parallel arrows to/from a dim-1 neighbour.
    SplitUniqueLoop,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReductionStep {
    pub kind: StepKind,
    pub vertex: usize,
    pub before: QuiverSetting,
    pub after: QuiverSetting,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeRecord {
    pub canonical: CanonicalSetting,
    pub dim: i64,
    pub name: Option<String>,
}

/// (chi(alpha, eps_i), chi(eps_i, alpha)): the in/out numbers at vertex i.
pub fn vertex_numbers(s: &QuiverSetting, i: usize) -> Result<(i64, i64)> {
    let n = s.quiver.n;
    if i >= n {
        return Err(QError::Malformed(format!("vertex {i} out of range")));
    }
    let e = eps(n, i);
    Ok((ringel(&s.quiver, &s.dim, &e)?, ringel(&s.quiver, &e, &s.dim)?))
}

/// A setting admits a simple representation iff the quiver is strongly
/// connected, both numbers are <= 0 at every vertex, and dimension vectors on
/// oriented cycles are all-ones. Single loop-free vertex: dim 1 only.
pub fn is_simple_setting(s: &QuiverSetting) -> Result<bool> {
    if s.quiver.n == 1 && s.quiver.arrows[0][0] == 0 {
        return Ok(s.dim[0] == 1);
    }
    if !is_strongly_connected(&s.quiver) {
        return Ok(false);
    }
    for i in 0..s.quiver.n {
        let (inn, out) = vertex_numbers(s, i)?;
        if inn > 0 || out > 0 {
            return Ok(false);
        }
    }
    if is_oriented_cycle(&s.quiver) {
        return Ok(s.dim.iter().all(|&d| d == 1));
    }
    Ok(true)
}

fn rule1(s: &QuiverSetting, i: usize) -> QuiverSetting {
    let mut q = s.quiver.clone();
    q.arrows[i][i] = 0;
    QuiverSetting { quiver: q, dim: s.dim.clone() }
}

fn rule2(s: &QuiverSetting, i: usize) -> Result<QuiverSetting> {
    let n = s.quiver.n;
    let mut q = s.quiver.clone();
    for k in 0..n {
        for l in 0..n {
            if k != i && l != i {
                let extra = s.quiver.arrows[k][i]
                    .checked_mul(s.quiver.arrows[i][l])
                    .ok_or(QError::Overflow("cabling"))?;
                q.arrows[k][l] = q.arrows[k][l]
                    .checked_add(extra)
                    .ok_or(QError::Overflow("cabling"))?;
            }
        }
    }
    let mut dim = s.dim.clone();
    dim[i] = 0;
    restrict_support(&q, &dim)
}

fn rule3(s: &QuiverSetting, i: usize, neighbour: usize, incoming: bool) -> QuiverSetting {
    let mut q = s.quiver.clone();
    q.arrows[i][i] = 0;
    // the loop plus the single arrow become dim(i) parallel arrows
    if incoming {
        q.arrows[neighbour][i] = s.dim[i];
    } else {
        q.arrows[i][neighbour] = s.dim[i];
    }
    QuiverSetting { quiver: q, dim: s.dim.clone() }
}

fn collect_steps(s: &QuiverSetting, all: bool) -> Result<Vec<(StepKind, usize, QuiverSetting)>> {
    let n = s.quiver.n;
    let mut out_steps = Vec::new();
    for i in 0..n {
        if s.dim[i] == 1 && s.quiver.arrows[i][i] >= 1 {
            out_steps.push((StepKind::RemoveLoopsDim1, i, rule1(s, i)));
            if !all {
                return Ok(out_steps);
            }
        }
    }
    for i in 0..n {
        if s.quiver.arrows[i][i] > 0 {
            continue;
        }
        let (inn, out) = vertex_numbers(s, i)?;
        if inn == 0 || out == 0 {
            out_steps.push((StepKind::CableVertex, i, rule2(s, i)?));
            if !all {
                return Ok(out_steps);
            }
        }
    }
    for i in 0..n {
        if s.quiver.arrows[i][i] != 1 {
            continue;
        }
        let (inn, out) = vertex_numbers(s, i)?;
        if inn == -1 {
            let ins: Vec<usize> = (0..n)
                .filter(|&j| j != i && s.quiver.arrows[j][i] > 0)
                .collect();
            if ins.len() == 1 && s.quiver.arrows[ins[0]][i] == 1 && s.dim[ins[0]] == 1 {
                out_steps.push((StepKind::SplitUniqueLoop, i, rule3(s, i, ins[0], true)));
                if !all {
                    return Ok(out_steps);
                }
            }
        }
        if out == -1 {
            let outs: Vec<usize> = (0..n)
                .filter(|&j| j != i && s.quiver.arrows[i][j] > 0)
                .collect();
            if outs.len() == 1 && s.quiver.arrows[i][outs[0]] == 1 && s.dim[outs[0]] == 1 {
                out_steps.push((StepKind::SplitUniqueLoop, i, rule3(s, i, outs[0], false)));
                if !all {
                    return Ok(out_steps);
                }
            }
        }
    }
    Ok(out_steps)
}

fn find_step(s: &QuiverSetting) -> Result<Option<(StepKind, usize, QuiverSetting)>> {
    Ok(collect_steps(s, false)?.into_iter().next())
}

/// Every applicable reduction step, in the deterministic search order. The
/// uniqueness of the irreducible type means any of them may be taken.
pub fn applicable_steps(s: &QuiverSetting) -> Result<Vec<(StepKind, usize, QuiverSetting)>> {
    collect_steps(s, true)
}

/// One reduction step if any applies, searched in deterministic order:
/// rule 1 at the lowest eligible vertex, then rule 2, then rule 3.
pub fn apply_step(s: &QuiverSetting) -> Result<Option<(ReductionStep, QuiverSetting)>> {
    if !is_simple_setting(s)? {
        return Err(QError::Domain("apply_step requires a simple setting".into()));
    }
    Ok(find_step(s)?.map(|(kind, vertex, after)| {
        (
            ReductionStep { kind, vertex, before: s.clone(), after: after.clone() },
            after,
        )
    }))
}

/// Iterate reduction steps to the fixed point. Only the input is validated;
/// intermediates are not re-checked (reduction can pass through settings the
/// simplicity test rejects without affecting the final type).
pub fn reduce_to_type(s: &QuiverSetting) -> Result<(TypeRecord, Vec<ReductionStep>)> {
    if !is_simple_setting(s)? {
        return Err(QError::Domain("reduce_to_type requires a simple setting".into()));
    }
    let mut cur = s.clone();
    let mut steps = Vec::new();
    while let Some((kind, vertex, after)) = find_step(&cur)? {
        steps.push(ReductionStep { kind, vertex, before: cur.clone(), after: after.clone() });
        cur = after;
    }
    let canonical = canonicalize(&cur);
    let dim = quotient_dim(&canonical.setting)?;
    let name = crate::names::lookup(&canonical.hash);
    Ok((TypeRecord { canonical, dim, name }, steps))
}

/// The single dim-1 vertex.
pub fn minimal_type_setting() -> QuiverSetting {
    QuiverSetting { quiver: Quiver::zero(1), dim: vec![1] }
}

/// The dim-2 vertex with two loops.
pub fn two_loop_setting() -> QuiverSetting {
    QuiverSetting {
        quiver: Quiver { n: 1, arrows: vec![vec![2]] },
        dim: vec![2],
    }
}

/// A type is smooth iff it is the single dim-1 vertex or the dim-2
/// two-loop vertex.
pub fn is_smooth_type(t: &TypeRecord) -> bool {
    let s = &t.canonical.setting;
    *s == minimal_type_setting() || *s == two_loop_setting()
}
