//! Local quiver settings from representation types, cycle types, and direct
//! successors in the type order.

use crate::quiver::{eps, minimal_cycles, restrict_support, ringel, DimVector, Quiver, QuiverSetting};
use crate::reduction::{reduce_to_type, TypeRecord};
use crate::{QError, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A semisimple representation shape: (multiplicity, factor dimension vector)
/// pairs over an ambient quiver. Factor identity is positional.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RepType {
    pub factors: Vec<(i64, DimVector)>,
    pub ambient: Quiver,
}

impl RepType {
    pub fn new(factors: Vec<(i64, DimVector)>, ambient: Quiver) -> Result<Self> {
        if factors.is_empty() {
            return Err(QError::Malformed("representation type needs a factor".into()));
        }
        for (e, beta) in &factors {
            if *e < 1 {
                return Err(QError::Malformed("factor multiplicities must be >= 1".into()));
            }
            if beta.len() != ambient.n || beta.iter().any(|&x| x < 0) || beta.iter().all(|&x| x == 0) {
                return Err(QError::Malformed("bad factor dimension vector".into()));
            }
        }
        Ok(RepType { factors, ambient })
    }

    pub fn total(&self) -> DimVector {
        let mut t = vec![0; self.ambient.n];
        for (e, beta) in &self.factors {
            for (ti, bi) in t.iter_mut().zip(beta) {
                *ti += e * bi;
            }
        }
        t
    }
}

/// The local setting: arrows[i][j] = delta_ij - chi(beta_i, beta_j), with the
/// multiplicities as dimensions.
pub fn local_quiver(sigma: &RepType) -> Result<QuiverSetting> {
    let u = sigma.factors.len();
    let mut q = Quiver::zero(u);
    for i in 0..u {
        for j in 0..u {
            let chi = ringel(&sigma.ambient, &sigma.factors[i].1, &sigma.factors[j].1)?;
            let delta = if i == j { 1 } else { 0 };
            let m = delta - chi;
            if m < 0 {
                return Err(QError::Domain(format!(
                    "invalid representation type: arrow count {m} between factors {i},{j}"
                )));
            }
            q.arrows[i][j] = m;
        }
    }
    let dims: DimVector = sigma.factors.iter().map(|(e, _)| *e).collect();
    restrict_support(&q, &dims)
}

/// The cycle type sigma_I: one multiplicity-1 factor on the indicator vector
/// of I plus vertex simples with the leftover multiplicities.
pub fn cycle_rep_type(s: &QuiverSetting, cycle: &[usize]) -> Result<RepType> {
    let n = s.quiver.n;
    if !minimal_cycles(&s.quiver).iter().any(|c| c == cycle) {
        return Err(QError::Domain("subset is not a loop or minimal cycle".into()));
    }
    let beta: DimVector = (0..n).map(|i| i64::from(cycle.contains(&i))).collect();
    if (0..n).any(|i| s.dim[i] < beta[i]) {
        return Err(QError::Domain("dimension vector does not cover the cycle".into()));
    }
    let mut factors = vec![(1, beta.clone())];
    for (i, &bi) in beta.iter().enumerate() {
        let m = s.dim[i] - bi;
        if m > 0 {
            factors.push((m, eps(n, i)));
        }
    }
    RepType::new(factors, s.quiver.clone())
}

/// Types reachable in one degeneration step: one per minimal cycle, after
/// reducing its local setting. Deduplicated; quotient dimension strictly
/// drops, so a successor equal to the source would be a contradiction and is
/// reported as a hard error.
pub fn direct_successors(t: &TypeRecord) -> Result<Vec<TypeRecord>> {
    let s = &t.canonical.setting;
    let mut out: BTreeMap<String, TypeRecord> = BTreeMap::new();
    for cycle in minimal_cycles(&s.quiver) {
        let sigma = cycle_rep_type(s, &cycle)?;
        let local = local_quiver(&sigma)?;
        let (succ, _) = reduce_to_type(&local)?;
        if succ.canonical.hash == t.canonical.hash {
            return Err(QError::Domain("type is its own successor".into()));
        }
        out.entry(succ.canonical.hash.clone()).or_insert(succ);
    }
    Ok(out.into_values().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonicalize;
    use crate::names::named_settings;
    use crate::reduction::minimal_type_setting;

    fn named(name: &str) -> QuiverSetting {
        named_settings().into_iter().find(|(n, _)| *n == name).unwrap().1
    }

    fn record(s: &QuiverSetting) -> TypeRecord {
        reduce_to_type(s).unwrap().0
    }

    #[test]
    fn single_factor_unit_vector() {
        let q = Quiver::zero(2);
        let sigma = RepType::new(vec![(1, vec![1, 0])], q).unwrap();
        assert_eq!(local_quiver(&sigma).unwrap(), minimal_type_setting());
    }

    #[test]
    fn conifold_witness_local_quiver() {
        // ambient: two sources feeding three sinks, one arrow each
        let mut q = Quiver::zero(5);
        for i in 0..2 {
            for j in 2..5 {
                q.arrows[i][j] = 1;
            }
        }
        let sigma = RepType::new(
            vec![(1, vec![2, 1, 1, 1, 1]), (1, vec![1, 2, 1, 1, 1])],
            q,
        )
        .unwrap();
        let local = local_quiver(&sigma).unwrap();
        assert_eq!(local.dim, vec![1, 1]);
        assert_eq!(local.quiver.arrows, vec![vec![2, 2], vec![2, 2]]);
    }

    #[test]
    fn two_loop_cycle_type() {
        let s = named("2loop");
        let sigma = cycle_rep_type(&s, &[0]).unwrap();
        assert_eq!(sigma.factors, vec![(1, vec![1]), (1, vec![1])]);
        // its local quiver: two dim-1 vertices, two loops each, one arrow each way
        let local = local_quiver(&sigma).unwrap();
        assert_eq!(local.dim, vec![1, 1]);
        assert_eq!(local.quiver.arrows, vec![vec![2, 1], vec![1, 2]]);
    }

    #[test]
    fn hexagon_cycle_type() {
        let s = named("7_6a");
        let sigma = cycle_rep_type(&s, &[0, 1]).unwrap();
        assert_eq!(sigma.factors.len(), 5);
        assert_eq!(sigma.factors[0], (1, vec![1, 1, 0, 0, 0, 0]));
        assert_eq!(sigma.total(), vec![1; 6]);
    }

    #[test]
    fn successor_chain() {
        let names = |t: &QuiverSetting| -> Vec<String> {
            direct_successors(&record(t))
                .unwrap()
                .iter()
                .map(|r| r.name.clone().unwrap_or_default())
                .collect()
        };
        assert_eq!(names(&named("2loop")), vec!["min"]);
        assert_eq!(names(&named("7_6a")), vec!["6_5k"]);
        let mut s74 = names(&named("7_4a"));
        s74.sort();
        assert_eq!(s74, vec!["6_5k", "6_A"]);
        assert_eq!(names(&named("6_5k")), vec!["5_4a"]);
        assert_eq!(names(&named("6_A")), vec!["5_4a"]);
        assert_eq!(names(&named("5_4a")), vec!["4_3a"]);
        assert_eq!(names(&named("4_3a")), vec!["3_c"]);
        assert_eq!(names(&named("3_c")), vec!["min"]);
    }

    #[test]
    fn cycle_factor_always_gets_a_loop() {
        for name in ["3_c", "4_3a", "5_4a", "6_5k", "7_6a", "4_3b", "6_A", "7_4a"] {
            let s = named(name);
            for cycle in crate::quiver::minimal_cycles(&s.quiver) {
                let local = local_quiver(&cycle_rep_type(&s, &cycle).unwrap()).unwrap();
                assert!(local.quiver.arrows[0][0] >= 1, "{name} {cycle:?}");
            }
        }
    }

    #[test]
    fn deepest_stratum_reproduces_quotient_dim() {
        use crate::quiver::quotient_dim;
        for name in ["3_c", "4_2", "6_A", "7_4a"] {
            let s = named(name);
            let sigma = RepType::new(vec![(1, s.dim.clone())], s.quiver.clone()).unwrap();
            let local = local_quiver(&sigma).unwrap();
            assert_eq!(quotient_dim(&local).unwrap(), quotient_dim(&s).unwrap(), "{name}");
        }
    }

    #[test]
    fn restriction_to_simples_reproduces_ambient() {
        // the local quiver restricted to the vertex-simple factors of sigma_I
        // is the ambient quiver again
        let s = named("4_3a");
        let sigma = RepType::new(
            (0..3).map(|i| (1, eps(3, i))).collect(),
            s.quiver.clone(),
        )
        .unwrap();
        let local = local_quiver(&sigma).unwrap();
        assert_eq!(canonicalize(&local).hash, canonicalize(&s).hash);
    }
}
