//! Vertex doubling: turn any quiver-with-stability into a loop- and
//! cycle-free one whose moduli are controlled by the original quiver.

use crate::quiver::{minimal_cycles, DimVector, Quiver, Stability};
use crate::{QError, Result};
use serde::{Deserialize, Serialize};

/// Which way the connecting arrows between the two halves of a split vertex
/// point. `MinusToPlus` is the verified default (the one-loop smallest case
/// reproduces the source quiver as controlling quiver); the other reading of
/// the construction is kept behind this flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum SplitOrientation {
    #[default]
    MinusToPlus,
    PlusToMinus,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SplitStep {
    /// Index of the split vertex in the quiver as it was before this step.
    pub vertex: usize,
    pub weight: i64,
}

/// Where an original vertex ended up.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum VertexImage {
    Unchanged(usize),
    /// (minus, plus): the emitting and receiving halves.
    Split(usize, usize),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SplitPlan {
    pub source: (Quiver, Stability),
    pub steps: Vec<SplitStep>,
    pub result: (Quiver, Stability),
    pub vertex_map: Vec<VertexImage>,
    pub orientation: SplitOrientation,
}

fn on_cycle(q: &Quiver, i: usize) -> bool {
    if q.arrows[i][i] > 0 {
        return true;
    }
    // i lies on a cycle iff some j != i is reachable from i and reaches i
    let reach = |from: usize, to: usize| -> bool {
        let mut seen = vec![false; q.n];
        let mut stack = vec![from];
        while let Some(u) = stack.pop() {
            for (v, s) in seen.iter_mut().enumerate() {
                if q.arrows[u][v] > 0 && !*s {
                    if v == to {
                        return true;
                    }
                    *s = true;
                    stack.push(v);
                }
            }
        }
        false
    };
    reach(i, i)
}

pub fn has_cycle(q: &Quiver) -> bool {
    (0..q.n).any(|i| on_cycle(q, i))
}

/// Split vertex i into i_- (index i, emits all former outgoing arrows) and
/// i_+ (index i+1, receives all former incoming arrows), joined by one
/// structural arrow plus one per former loop. theta gets (-n, t_i + n) on
/// the two halves.
pub fn split_vertex(
    q: &Quiver,
    th: &Stability,
    i: usize,
    n: i64,
    orientation: SplitOrientation,
) -> Result<(Quiver, Stability)> {
    if th.len() != q.n {
        return Err(QError::Malformed("stability length mismatch".into()));
    }
    if i >= q.n {
        return Err(QError::Malformed(format!("vertex {i} out of range")));
    }
    if n < 1 {
        return Err(QError::Domain("split weight must be >= 1".into()));
    }
    if !on_cycle(q, i) {
        return Err(QError::Domain(format!("vertex {i} lies on no loop or cycle")));
    }
    let m = q.n + 1;
    let map = |j: usize| if j < i { j } else { j + 1 }; // old j -> new, for j != i
    let (minus, plus) = (i, i + 1);
    let mut out = Quiver::zero(m);
    for j in 0..q.n {
        for k in 0..q.n {
            if j == i && k == i {
                continue;
            }
            if j == i {
                out.arrows[minus][map(k)] = q.arrows[i][k];
            } else if k == i {
                out.arrows[map(j)][plus] = q.arrows[j][i];
            } else {
                out.arrows[map(j)][map(k)] = q.arrows[j][k];
            }
        }
    }
    let joining = 1 + q.arrows[i][i];
    match orientation {
        SplitOrientation::MinusToPlus => out.arrows[minus][plus] = joining,
        SplitOrientation::PlusToMinus => out.arrows[plus][minus] = joining,
    }
    let mut th2 = Vec::with_capacity(m);
    for (j, &t) in th.iter().enumerate() {
        if j == i {
            th2.push(-n);
            th2.push(t + n);
        } else {
            th2.push(t);
        }
    }
    Ok((out, th2))
}

/// Repeatedly split the vertex lying on the most minimal cycles (lowest
/// index on ties) until no loops or oriented cycles remain. Weights come
/// from `weights` in step order, or all default to `default_weight` when
/// `weights` is empty.
pub fn acyclify(
    q: &Quiver,
    th: &Stability,
    weights: &[i64],
    default_weight: i64,
    orientation: SplitOrientation,
) -> Result<SplitPlan> {
    let mut cur = q.clone();
    let mut cur_th = th.clone();
    let mut vertex_map: Vec<VertexImage> = (0..q.n).map(VertexImage::Unchanged).collect();
    let mut steps = Vec::new();
    loop {
        let cycles = minimal_cycles(&cur);
        if cycles.is_empty() {
            break;
        }
        let target = (0..cur.n)
            .max_by_key(|&v| {
                let cover = cycles.iter().filter(|c| c.contains(&v)).count();
                (cover, usize::MAX - v) // most cycles covered, lowest index on ties
            })
            .unwrap();
        let w = match weights.get(steps.len()) {
            Some(&w) => w,
            None if weights.is_empty() => default_weight,
            None => return Err(QError::Domain("weight list exhausted".into())),
        };
        let (nq, nth) = split_vertex(&cur, &cur_th, target, w, orientation)?;
        // shift the book-keeping: indices > target move up one
        for img in vertex_map.iter_mut() {
            *img = match *img {
                VertexImage::Unchanged(j) if j == target => VertexImage::Split(target, target + 1),
                VertexImage::Unchanged(j) if j > target => VertexImage::Unchanged(j + 1),
                VertexImage::Unchanged(j) => VertexImage::Unchanged(j),
                VertexImage::Split(a, b) => VertexImage::Split(
                    if a > target { a + 1 } else { a },
                    if b > target { b + 1 } else { b },
                ),
            };
        }
        steps.push(SplitStep { vertex: target, weight: w });
        cur = nq;
        cur_th = nth;
        if steps.len() > 4 * q.n {
            return Err(QError::Domain("splitting failed to terminate".into()));
        }
    }
    debug_assert!(!has_cycle(&cur));
    Ok(SplitPlan {
        source: (q.clone(), th.clone()),
        steps,
        result: (cur, cur_th),
        vertex_map,
        orientation,
    })
}

/// Lift a dimension vector of the source quiver: split vertices carry their
/// dimension on both halves.
pub fn lift_dim(plan: &SplitPlan, alpha: &[i64]) -> Result<DimVector> {
    if alpha.len() != plan.source.0.n {
        return Err(QError::Malformed("dimension vector length mismatch".into()));
    }
    let mut out = vec![0; plan.result.0.n];
    for (v, img) in plan.vertex_map.iter().enumerate() {
        match *img {
            VertexImage::Unchanged(j) => out[j] = alpha[v],
            VertexImage::Split(a, b) => {
                out[a] = alpha[v];
                out[b] = alpha[v];
            }
        }
    }
    Ok(out)
}

/// The induced generator set on the result: one generator per source vertex,
/// the unit vector for unchanged vertices and the sum of the two halves'
/// units for split ones. Their supports are disjoint by construction.
pub fn lifted_generators(plan: &SplitPlan) -> Vec<DimVector> {
    let m = plan.result.0.n;
    plan.vertex_map
        .iter()
        .map(|img| {
            let mut g = vec![0; m];
            match *img {
                VertexImage::Unchanged(j) => g[j] = 1,
                VertexImage::Split(a, b) => {
                    g[a] = 1;
                    g[b] = 1;
                }
            }
            g
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moduli::{controlling_quiver, GeneratorSet};

    fn hexagon() -> Quiver {
        let mut q = Quiver::zero(6);
        for i in 0..6 {
            let j = (i + 1) % 6;
            q.arrows[i][j] = 1;
            q.arrows[j][i] = 1;
        }
        q
    }

    #[test]
    fn one_loop_smallest_case() {
        let q = Quiver { n: 1, arrows: vec![vec![1]] };
        let plan = acyclify(&q, &vec![0], &[3], 1, SplitOrientation::default()).unwrap();
        assert_eq!(plan.result.0.n, 2);
        // the loop plus the structural arrow: two arrows minus -> plus
        assert_eq!(plan.result.0.arrows, vec![vec![0, 2], vec![0, 0]]);
        assert_eq!(plan.result.1, vec![-3, 3]);
        assert!(!has_cycle(&plan.result.0));
        // controlling quiver of the lifted generators is the source again
        let gens = lifted_generators(&plan);
        let gs = GeneratorSet::new(gens, plan.result.1.clone()).unwrap();
        assert_eq!(controlling_quiver(&gs, &plan.result.0).unwrap(), q);
    }

    #[test]
    fn hexagon_three_splits() {
        let th = vec![0; 6];
        let plan = acyclify(&hexagon(), &th, &[2, 3, 5], 1, SplitOrientation::default()).unwrap();
        assert_eq!(plan.steps.len(), 3);
        let (q2, th2) = &plan.result;
        assert_eq!(q2.n, 9);
        let total: i64 = q2.arrows.iter().flatten().sum();
        assert_eq!(total, 15); // 12 source arrows + 3 structural
        assert!(!has_cycle(q2));
        // theta pattern: three (-w, w) pairs, zeros elsewhere
        let mut pos: Vec<i64> = th2.iter().copied().filter(|&t| t > 0).collect();
        pos.sort();
        assert_eq!(pos, vec![2, 3, 5]);
        assert_eq!(th2.iter().sum::<i64>(), 0);
        assert_eq!(th2.iter().filter(|&&t| t == 0).count(), 3);
        // alternating vertices got split
        let split: Vec<usize> = plan
            .vertex_map
            .iter()
            .enumerate()
            .filter(|(_, img)| matches!(img, VertexImage::Split(_, _)))
            .map(|(v, _)| v)
            .collect();
        assert_eq!(split, vec![0, 2, 4]);
    }

    #[test]
    fn lift_preserves_pairing() {
        let th = vec![0; 6];
        let plan = acyclify(&hexagon(), &th, &[], 7, SplitOrientation::default()).unwrap();
        let alpha = vec![1, 2, 1, 3, 1, 2];
        let lifted = lift_dim(&plan, &alpha).unwrap();
        let pairing: i64 = plan.result.1.iter().zip(&lifted).map(|(&t, &a)| t * a).sum();
        assert_eq!(pairing, 0);
    }

    #[test]
    fn controlling_quiver_is_source() {
        let th = vec![0; 6];
        let plan = acyclify(&hexagon(), &th, &[2, 2, 2], 1, SplitOrientation::default()).unwrap();
        let gs = GeneratorSet::new(lifted_generators(&plan), plan.result.1.clone()).unwrap();
        assert_eq!(controlling_quiver(&gs, &plan.result.0).unwrap(), hexagon());
    }

    #[test]
    fn already_acyclic() {
        let q = Quiver { n: 2, arrows: vec![vec![0, 1], vec![0, 0]] };
        let plan = acyclify(&q, &vec![1, -1], &[], 1, SplitOrientation::default()).unwrap();
        assert!(plan.steps.is_empty());
        assert_eq!(plan.result.0, q);
    }

    #[test]
    fn split_rejects_cycle_free_vertex() {
        let q = Quiver { n: 2, arrows: vec![vec![0, 1], vec![0, 0]] };
        assert!(split_vertex(&q, &vec![0, 0], 0, 1, SplitOrientation::default()).is_err());
    }
}
