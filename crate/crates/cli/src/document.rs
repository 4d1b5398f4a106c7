//! JSON result documents.

use std::collections::BTreeMap;

use cadkit::engine::CadResult;
use cadkit::projection::ProjectionSet;
use cadkit::realalg::SerializedValue;
use cadkit::{Polynomial, RealAlgebraic, VarOrder};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ValueDoc {
    Rational { rational: String },
    Algebraic { defpoly: String, interval: [String; 2] },
}

impl ValueDoc {
    pub fn of(v: &RealAlgebraic, order: &VarOrder) -> Self {
        match v.serialize_parts(order) {
            SerializedValue::Rational(q) => ValueDoc::Rational { rational: q },
            SerializedValue::Algebraic { defpoly, interval } => {
                ValueDoc::Algebraic { defpoly, interval: [interval.0, interval.1] }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellDoc {
    pub index: Vec<usize>,
    pub dimension: usize,
    pub sample: Vec<ValueDoc>,
    pub signs: BTreeMap<String, i8>,
    pub truth: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjPolyDoc {
    pub poly: String,
    pub tag: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelDoc {
    pub level: usize,
    pub variable: String,
    pub polys: Vec<ProjPolyDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub variables: Vec<String>,
    pub order: String,
    pub algorithm: String,
    pub cell_count: usize,
    pub cells: Vec<CellDoc>,
    pub warnings: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub projection: Option<Vec<LevelDoc>>,
}

/// Projection set, one block per level from the top.
pub fn projection_doc(p: &ProjectionSet, order: &VarOrder) -> Vec<LevelDoc> {
    (0..p.nvars())
        .rev()
        .map(|v| LevelDoc {
            level: v + 1,
            variable: order.name(v).to_string(),
            polys: p
                .level(v)
                .iter()
                .map(|(q, t)| ProjPolyDoc { poly: q.to_string_with(order), tag: t.to_string() })
                .collect(),
        })
        .collect()
}

pub fn build(r: &CadResult, order: &VarOrder, names: &[(String, Polynomial)], with_projection: bool) -> ResultDocument {
    let cells: Vec<CellDoc> = r
        .cad
        .cells()
        .par_iter()
        .enumerate()
        .map(|(i, c)| {
            let mut s = c.sample.clone();
            CellDoc {
                index: c.index.clone(),
                dimension: c.dimension(),
                sample: c.sample.coords.iter().map(|v| ValueDoc::of(v, order)).collect(),
                signs: names.iter().map(|(n, p)| (n.clone(), s.sign_of(p))).collect(),
                truth: r.truth[i].clone(),
            }
        })
        .collect();
    ResultDocument {
        variables: order.names().to_vec(),
        order: order.names().join("<"),
        algorithm: r.algorithm.to_string(),
        cell_count: cells.len(),
        cells,
        warnings: r.cad.warnings(order),
        projection: with_projection.then(|| projection_doc(&r.cad.projection, order)),
    }
}

/// One line per cell: index, dimension, approximate sample and clause truth.
pub fn text(r: &CadResult, order: &VarOrder) -> String {
    let mut out = format!("algorithm: {}\norder: {}\ncells: {}\n", r.algorithm, order.names().join("<"), r.cell_count());
    for (i, c) in r.cad.cells().iter().enumerate() {
        let pt: Vec<String> = c.sample.coords.iter().map(|v| format!("{:.4}", v.to_f64())).collect();
        let t: Vec<&str> = r.truth[i].iter().map(|&b| if b { "T" } else { "F" }).collect();
        out.push_str(&format!("{} dim {} ({}) {}\n", c.index_string(), c.dimension(), pt.join(", "), t.join("")));
    }
    for w in r.cad.warnings(order) {
        out.push_str(&format!("warning: {}\n", w));
    }
    out
}
