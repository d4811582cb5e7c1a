//! Controlling quivers, stable decompositions, and the smooth/singular
//! verdict for moduli spaces.

use crate::local::direct_successors;
use crate::quiver::{restrict_support, ringel, DimVector, Quiver, Stability};
use crate::reduction::{is_simple_setting, is_smooth_type, reduce_to_type, TypeRecord};
use crate::{QError, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// A minimal generating set for the monoid of dimension vectors admitting
/// semistable representations, supplied by the user and validated for
/// theta-orthogonality and internal minimality. Whether it really generates
/// that monoid is the caller's responsibility.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GeneratorSet {
    pub gens: Vec<DimVector>,
    pub theta: Stability,
}

/// Non-negative integer solutions c to sum c_i gens_i = target.
fn solve_nonneg(gens: &[DimVector], target: &DimVector) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut c = vec![0i64; gens.len()];
    fn rec(
        i: usize,
        rem: &mut DimVector,
        gens: &[DimVector],
        c: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) {
        if i == gens.len() {
            if rem.iter().all(|&x| x == 0) {
                out.push(c.clone());
            }
            return;
        }
        let g = &gens[i];
        let cap = rem
            .iter()
            .zip(g)
            .filter(|(_, &gi)| gi > 0)
            .map(|(&r, &gi)| r / gi)
            .min()
            .unwrap_or(0);
        for m in 0..=cap {
            if m > 0 {
                for (r, &gi) in rem.iter_mut().zip(g) {
                    *r -= gi;
                }
            }
            c[i] = m;
            rec(i + 1, rem, gens, c, out);
        }
        c[i] = 0;
        for (r, &gi) in rem.iter_mut().zip(g) {
            *r += cap * gi;
        }
    }
    rec(0, &mut target.clone(), gens, &mut c, &mut out);
    out
}

impl GeneratorSet {
    pub fn new(gens: Vec<DimVector>, theta: Stability) -> Result<Self> {
        let n = theta.len();
        for g in &gens {
            if g.len() != n {
                return Err(QError::Malformed("generator length mismatch".into()));
            }
            if g.iter().any(|&x| x < 0) || g.iter().all(|&x| x == 0) {
                return Err(QError::Malformed("generators must be nonzero and >= 0".into()));
            }
            let pairing: i64 = theta.iter().zip(g).map(|(&t, &x)| t * x).sum();
            if pairing != 0 {
                return Err(QError::Domain(format!("generator {g:?} has nonzero theta-pairing")));
            }
        }
        // minimality within the set: no generator is a non-negative integer
        // combination of the others
        for i in 0..gens.len() {
            let others: Vec<DimVector> = gens
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, g)| g.clone())
                .collect();
            if !solve_nonneg(&others, &gens[i]).is_empty() {
                return Err(QError::Domain(format!(
                    "generator {:?} is a combination of the others",
                    gens[i]
                )));
            }
        }
        Ok(GeneratorSet { gens, theta })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModuliProblem {
    pub quiver: Quiver,
    pub theta: Stability,
    pub alpha: DimVector,
    pub generators: GeneratorSet,
}

impl ModuliProblem {
    pub fn new(quiver: Quiver, theta: Stability, alpha: DimVector, gens: Vec<DimVector>) -> Result<Self> {
        if theta.len() != quiver.n || alpha.len() != quiver.n {
            return Err(QError::Malformed("theta/alpha length mismatch".into()));
        }
        if alpha.iter().any(|&x| x < 0) {
            return Err(QError::Malformed("alpha must be >= 0".into()));
        }
        let pairing: i64 = theta.iter().zip(&alpha).map(|(&t, &x)| t * x).sum();
        if pairing != 0 {
            return Err(QError::Domain("theta . alpha must vanish".into()));
        }
        let generators = GeneratorSet::new(gens, theta.clone())?;
        Ok(ModuliProblem { quiver, theta, alpha, generators })
    }
}

/// The quiver on the generators: arrows[i][j] = delta_ij - chi(gamma_i, gamma_j).
pub fn controlling_quiver(g: &GeneratorSet, q: &Quiver) -> Result<Quiver> {
    let l = g.gens.len();
    let mut out = Quiver::zero(l);
    for i in 0..l {
        for j in 0..l {
            let chi = ringel(q, &g.gens[i], &g.gens[j])?;
            let delta = if i == j { 1 } else { 0 };
            let m = delta - chi;
            if m < 0 {
                return Err(QError::Domain(format!(
                    "generators {i},{j} give negative arrow count {m}"
                )));
            }
            out.arrows[i][j] = m;
        }
    }
    Ok(out)
}

/// c-vectors decomposing alpha over the generators whose support-restricted
/// controlling setting admits a simple representation. Empty means no stable
/// representation of dimension alpha exists.
pub fn stable_decompositions(p: &ModuliProblem) -> Result<Vec<Vec<i64>>> {
    let ctrl = controlling_quiver(&p.generators, &p.quiver)?;
    let mut out = Vec::new();
    for c in solve_nonneg(&p.generators.gens, &p.alpha) {
        if c.iter().all(|&x| x == 0) {
            continue;
        }
        let s = restrict_support(&ctrl, &c)?;
        if is_simple_setting(&s)? {
            out.push(c);
        }
    }
    Ok(out)
}

/// (chi_Q(beta, beta'), chi_{Q_theta}(gamma, gamma')) for two c-vectors;
/// the two sides agree for genuine stable decompositions.
pub fn check_chi_transfer(p: &ModuliProblem, c: &[i64], c2: &[i64]) -> Result<(i64, i64)> {
    let ctrl = controlling_quiver(&p.generators, &p.quiver)?;
    let beta = combine(&p.generators.gens, c, p.quiver.n);
    let beta2 = combine(&p.generators.gens, c2, p.quiver.n);
    Ok((ringel(&p.quiver, &beta, &beta2)?, ringel(&ctrl, c, c2)?))
}

pub fn combine(gens: &[DimVector], c: &[i64], n: usize) -> DimVector {
    let mut v = vec![0; n];
    for (ci, g) in c.iter().zip(gens) {
        for (vi, gi) in v.iter_mut().zip(g) {
            *vi += ci * gi;
        }
    }
    v
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Decomposition {
    pub c: Vec<i64>,
    pub record: TypeRecord,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModuliReport {
    pub stable_exists: bool,
    pub dimension: Option<i64>,
    pub decompositions: Vec<Decomposition>,
    /// Singular types in the downward closure of the decomposition types
    /// (smooth types are omitted; they carry no singularity).
    pub closure: Vec<TypeRecord>,
    /// Successor edges restricted to the closure, as (source, target) hashes.
    pub edges: BTreeSet<(String, String)>,
    pub smooth: Option<bool>,
}

/// The full pipeline: decompose, reduce each piece to its type, close
/// downwards under direct successors, and read off the smooth verdict.
pub fn analyze(p: &ModuliProblem) -> Result<ModuliReport> {
    let ctrl = controlling_quiver(&p.generators, &p.quiver)?;
    let cs = stable_decompositions(p)?;
    if cs.is_empty() {
        return Ok(ModuliReport {
            stable_exists: false,
            dimension: None,
            decompositions: Vec::new(),
            closure: Vec::new(),
            edges: BTreeSet::new(),
            smooth: None,
        });
    }
    let mut decompositions = Vec::new();
    let mut worklist: Vec<TypeRecord> = Vec::new();
    for c in cs {
        let s = restrict_support(&ctrl, &c)?;
        let (record, _) = reduce_to_type(&s)?;
        worklist.push(record.clone());
        decompositions.push(Decomposition { c, record });
    }
    let smooth = decompositions.iter().all(|d| is_smooth_type(&d.record));
    // closure: walk successors, keeping only singular types
    let mut closure: BTreeMap<String, TypeRecord> = BTreeMap::new();
    let mut edges = BTreeSet::new();
    let mut seen: BTreeSet<String> = BTreeSet::new();
    while let Some(t) = worklist.pop() {
        if !seen.insert(t.canonical.hash.clone()) {
            continue;
        }
        if is_smooth_type(&t) {
            continue;
        }
        closure.insert(t.canonical.hash.clone(), t.clone());
        for succ in direct_successors(&t)? {
            if !is_smooth_type(&succ) {
                edges.insert((t.canonical.hash.clone(), succ.canonical.hash.clone()));
            }
            worklist.push(succ);
        }
    }
    let mut closure: Vec<TypeRecord> = closure.into_values().collect();
    closure.sort_by(|a, b| (b.dim, &a.canonical.hash).cmp(&(a.dim, &b.canonical.hash)));
    let dimension = Some(1 - ringel(&p.quiver, &p.alpha, &p.alpha)?);
    Ok(ModuliReport {
        stable_exists: true,
        dimension,
        decompositions,
        closure,
        edges,
        smooth: Some(smooth),
    })
}
