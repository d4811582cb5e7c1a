//! Stable file formats. Quivers are exchanged as arrow triples
//! `[from, to, count]` with 0-based vertices; everything else is plain
//! integer arrays on top of that.

use crate::moduli::{ModuliProblem, ModuliReport};
use crate::poset::{display_names, TypePoset};
use crate::quiver::{Quiver, QuiverSetting};
use crate::reduction::TypeRecord;
use crate::{QError, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuiverDoc {
    pub vertices: usize,
    pub arrows: Vec<(usize, usize, i64)>,
}

impl QuiverDoc {
    pub fn from_quiver(q: &Quiver) -> Self {
        let mut arrows = Vec::new();
        for i in 0..q.n {
            for j in 0..q.n {
                if q.arrows[i][j] > 0 {
                    arrows.push((i, j, q.arrows[i][j]));
                }
            }
        }
        QuiverDoc { vertices: q.n, arrows }
    }

    pub fn to_quiver(&self) -> Result<Quiver> {
        let mut q = Quiver::zero(self.vertices);
        if self.vertices == 0 {
            return Err(QError::Malformed("quiver needs at least one vertex".into()));
        }
        for &(i, j, m) in &self.arrows {
            if i >= self.vertices || j >= self.vertices {
                return Err(QError::Malformed(format!("arrow ({i},{j}) out of range")));
            }
            if m < 0 {
                return Err(QError::Malformed("negative arrow multiplicity".into()));
            }
            q.arrows[i][j] = q.arrows[i][j]
                .checked_add(m)
                .ok_or(QError::Overflow("arrow count"))?;
        }
        Ok(q)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SettingDoc {
    pub quiver: QuiverDoc,
    pub dims: Vec<i64>,
}

impl SettingDoc {
    pub fn from_setting(s: &QuiverSetting) -> Self {
        SettingDoc { quiver: QuiverDoc::from_quiver(&s.quiver), dims: s.dim.clone() }
    }

    pub fn to_setting(&self) -> Result<QuiverSetting> {
        QuiverSetting::new(self.quiver.to_quiver()?, self.dims.clone())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RepTypeDoc {
    pub factors: Vec<(i64, Vec<i64>)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProblemDoc {
    pub quiver: QuiverDoc,
    pub theta: Vec<i64>,
    pub alpha: Vec<i64>,
    pub generators: Vec<Vec<i64>>,
}

impl ProblemDoc {
    pub fn to_problem(&self) -> Result<ModuliProblem> {
        ModuliProblem::new(
            self.quiver.to_quiver()?,
            self.theta.clone(),
            self.alpha.clone(),
            self.generators.clone(),
        )
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TypeDoc {
    pub id: String,
    pub name: Option<String>,
    pub dim: i64,
    pub setting: SettingDoc,
}

impl TypeDoc {
    pub fn from_record(t: &TypeRecord) -> Self {
        TypeDoc {
            id: t.canonical.hash.clone(),
            name: t.name.clone(),
            dim: t.dim,
            setting: SettingDoc::from_setting(&t.canonical.setting),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PosetDoc {
    pub nodes: Vec<TypeDoc>,
    pub edges: Vec<(String, String)>,
    pub names: BTreeMap<String, String>,
}

impl PosetDoc {
    pub fn from_poset(p: &TypePoset) -> Self {
        let mut nodes: Vec<TypeDoc> = p.nodes.values().map(TypeDoc::from_record).collect();
        nodes.sort_by(|a, b| (a.dim, &a.id).cmp(&(b.dim, &b.id)));
        PosetDoc {
            nodes,
            edges: p.edges.iter().cloned().collect(),
            names: display_names(p),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportDoc {
    pub stable_exists: bool,
    pub dimension: Option<i64>,
    pub smooth: Option<bool>,
    pub decompositions: Vec<DecompositionDoc>,
    pub closure: Vec<TypeDoc>,
    pub edges: Vec<(String, String)>,
    pub names: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DecompositionDoc {
    pub c: Vec<i64>,
    pub r#type: TypeDoc,
}

impl ReportDoc {
    pub fn from_report(r: &ModuliReport) -> Self {
        let mut names = BTreeMap::new();
        let mut auto = 0usize;
        for t in r.closure.iter().chain(r.decompositions.iter().map(|d| &d.record)) {
            let name = t.name.clone().unwrap_or_else(|| {
                auto += 1;
                format!("t{auto}")
            });
            names.entry(t.canonical.hash.clone()).or_insert(name);
        }
        ReportDoc {
            stable_exists: r.stable_exists,
            dimension: r.dimension,
            smooth: r.smooth,
            decompositions: r
                .decompositions
                .iter()
                .map(|d| DecompositionDoc { c: d.c.clone(), r#type: TypeDoc::from_record(&d.record) })
                .collect(),
            closure: r.closure.iter().map(TypeDoc::from_record).collect(),
            edges: r.edges.iter().cloned().collect(),
            names,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quiver_round_trip() {
        let q = Quiver {
            n: 3,
            arrows: vec![vec![1, 2, 0], vec![0, 0, 1], vec![3, 0, 0]],
        };
        let doc = QuiverDoc::from_quiver(&q);
        assert_eq!(doc.to_quiver().unwrap(), q);
        let json = serde_json::to_string(&doc).unwrap();
        let back: QuiverDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_quiver().unwrap(), q);
    }

    #[test]
    fn setting_round_trip() {
        let s = QuiverSetting::new(
            Quiver { n: 2, arrows: vec![vec![0, 2], vec![2, 0]] },
            vec![1, 1],
        )
        .unwrap();
        let doc = SettingDoc::from_setting(&s);
        assert_eq!(doc.to_setting().unwrap(), s);
    }

    #[test]
    fn malformed_rejected() {
        let doc = QuiverDoc { vertices: 2, arrows: vec![(0, 5, 1)] };
        assert!(matches!(doc.to_quiver(), Err(QError::Malformed(_))));
        let doc = QuiverDoc { vertices: 0, arrows: vec![] };
        assert!(doc.to_quiver().is_err());
    }
}
