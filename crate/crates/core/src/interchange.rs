//! JSON interchange format for interaction and coupling graphs.
//!
//! Interaction graph:
//!
//! ```json
//! {"vertices": 3, "edges": [[0, 1, 2], [1, 2, 1]], "vertex_weights": {"0": 1, "2": {"single": 1, "measure": 1}}}
//! ```
//!
//! A vertex weight is either the single-qubit gate count or an object with
//! `single` and `measure` counts. Vertices without gates may be omitted.
//!
//! Coupling graph:
//!
//! ```json
//! {"vertices": 2, "edges": [[0, 1]], "xi_s": [0.001, 0.002], "xi_d": [0.01], "xi_m": [0.02, 0.03], "layout": [[0, 0], [0, 1]]}
//! ```
//!
//! `xi_d[i]` belongs to `edges[i]`; `layout` may be `null` or absent.
//! Both documents accept an optional free-text `comment`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{CouplingGraph, GraphError, InteractionGraph};

#[derive(Debug, Error)]
pub enum InterchangeError {
    #[error("malformed graph document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid graph: {0}")]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum VertexWeight {
    Single(u64),
    Full {
        #[serde(default)]
        single: u64,
        #[serde(default)]
        measure: u64,
    },
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InteractionDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    comment: Option<String>,
    vertices: usize,
    edges: Vec<(usize, usize, u64)>,
    #[serde(default)]
    vertex_weights: BTreeMap<usize, VertexWeight>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CouplingDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    comment: Option<String>,
    vertices: usize,
    edges: Vec<(usize, usize)>,
    xi_s: Vec<f64>,
    xi_d: Vec<f64>,
    xi_m: Vec<f64>,
    #[serde(default)]
    layout: Option<Vec<(usize, usize)>>,
}

pub fn interaction_to_json(g: &InteractionGraph, comment: Option<&str>) -> String {
    let vertex_weights = (0..g.num_vertices())
        .filter_map(|v| {
            let (single, measure) = (g.single_count(v), g.measure_count(v));
            match (single, measure) {
                (0, 0) => None,
                (s, 0) => Some((v, VertexWeight::Single(s))),
                (single, measure) => Some((v, VertexWeight::Full { single, measure })),
            }
        })
        .collect();
    let doc = InteractionDoc {
        comment: comment.map(str::to_string),
        vertices: g.num_vertices(),
        edges: g.edges().map(|((a, b), w)| (a, b, w)).collect(),
        vertex_weights,
    };
    serde_json::to_string_pretty(&doc).expect("graph documents always serialize")
}

pub fn interaction_from_json(text: &str) -> Result<InteractionGraph, InterchangeError> {
    let doc: InteractionDoc = serde_json::from_str(text)?;
    let mut g = InteractionGraph::new(doc.vertices);
    for (a, b, w) in doc.edges {
        if g.edge_weight(a, b).is_some() {
            return Err(GraphError::DuplicateEdge(a.min(b), a.max(b)).into());
        }
        g.add_edge(a, b, w)?;
    }
    for (v, weight) in doc.vertex_weights {
        let (single, measure) = match weight {
            VertexWeight::Single(s) => (s, 0),
            VertexWeight::Full { single, measure } => (single, measure),
        };
        g.add_single(v, single)?;
        g.add_measure(v, measure)?;
    }
    Ok(g)
}

pub fn coupling_to_json(g: &CouplingGraph, comment: Option<&str>) -> String {
    let doc = CouplingDoc {
        comment: comment.map(str::to_string),
        vertices: g.num_vertices(),
        edges: g.edges().to_vec(),
        xi_s: g.xi_s().to_vec(),
        xi_d: g.xi_d().to_vec(),
        xi_m: g.xi_m().to_vec(),
        layout: g.layout().map(<[_]>::to_vec),
    };
    serde_json::to_string_pretty(&doc).expect("graph documents always serialize")
}

pub fn coupling_from_json(text: &str) -> Result<CouplingGraph, InterchangeError> {
    let doc: CouplingDoc = serde_json::from_str(text)?;
    Ok(CouplingGraph::new(
        doc.vertices,
        doc.edges,
        doc.xi_s,
        doc.xi_m,
        doc.xi_d,
        doc.layout,
    )?)
}
