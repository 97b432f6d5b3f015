//! Benchmark interaction graphs.
//!
//! * `Linear(r)`: the path `0 - 1 - ... - (r-1)`.
//! * `SequenceI(s, k)` / `SequenceII(s, k)`: the path on `s` vertices plus
//!   the first `k` "nonlinear" edges of a fixed stream that ends at `K_s`.
//!   Sequence I is depth-first (saturate vertex 0, then 1, ...), Sequence II
//!   breadth-first (chords of growing circular span, keeping degrees level).
//! * `Realistic(name)`: fixture graphs of small textbook circuits, shipped as
//!   editable JSON under `fixtures/`.
//!
//! Generated families carry one single-qubit gate per vertex and one
//! two-qubit gate per edge before `depth_multiplier` is applied.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::InteractionGraph;
use crate::interchange::{interaction_from_json, InterchangeError};

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("unknown benchmark `{0}`")]
    UnknownBenchmark(String),
    #[error("{0}")]
    Range(String),
    #[error("fixture `{name}`: {source}")]
    CorruptFixture {
        name: String,
        #[source]
        source: InterchangeError,
    },
    #[error("fixture `{name}`: {source}")]
    Io {
        name: String,
        #[source]
        source: std::io::Error,
    },
}

/// Benchmark names accepted by [`load_realistic`].
pub const REALISTIC_NAMES: [&str; 12] = [
    "BV4", "BV6", "BV8", "QFT", "HS2", "HS4", "HS6", "Fredkin", "Or", "Peres", "Toffoli", "Adder",
];

fn fixture_file(name: &str) -> Option<(&'static str, &'static str)> {
    let canonical = REALISTIC_NAMES
        .iter()
        .find(|n| n.eq_ignore_ascii_case(name))?;
    Some(match *canonical {
        "BV4" => ("bv4", include_str!("../fixtures/bv4.json")),
        "BV6" => ("bv6", include_str!("../fixtures/bv6.json")),
        "BV8" => ("bv8", include_str!("../fixtures/bv8.json")),
        "QFT" | "HS2" => ("qft_hs2", include_str!("../fixtures/qft_hs2.json")),
        "HS4" => ("hs4", include_str!("../fixtures/hs4.json")),
        "HS6" => ("hs6", include_str!("../fixtures/hs6.json")),
        "Adder" => ("adder", include_str!("../fixtures/adder.json")),
        _ => ("triangle", include_str!("../fixtures/triangle.json")),
    })
}

/// Canonical spelling of a realistic benchmark name.
pub fn canonical_name(name: &str) -> Option<&'static str> {
    REALISTIC_NAMES
        .iter()
        .copied()
        .find(|n| n.eq_ignore_ascii_case(name))
}

/// Loads a realistic benchmark from the fixtures compiled into the crate.
pub fn load_realistic(name: &str) -> Result<InteractionGraph, BenchError> {
    let (_, text) = fixture_file(name).ok_or_else(|| BenchError::UnknownBenchmark(name.into()))?;
    interaction_from_json(text).map_err(|source| BenchError::CorruptFixture {
        name: name.into(),
        source,
    })
}

/// Loads a realistic benchmark from `<dir>/<fixture>.json`, for edited
/// fixture sets.
pub fn load_realistic_from(dir: &Path, name: &str) -> Result<InteractionGraph, BenchError> {
    let (file, _) = fixture_file(name).ok_or_else(|| BenchError::UnknownBenchmark(name.into()))?;
    let text = std::fs::read_to_string(dir.join(format!("{file}.json"))).map_err(|source| {
        BenchError::Io {
            name: name.into(),
            source,
        }
    })?;
    interaction_from_json(&text).map_err(|source| BenchError::CorruptFixture {
        name: name.into(),
        source,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum Family {
    #[serde(rename = "realistic")]
    Realistic { name: String },
    #[serde(rename = "sequence_i")]
    SequenceI { s: usize, k: usize },
    #[serde(rename = "sequence_ii")]
    SequenceII { s: usize, k: usize },
    #[serde(rename = "linear")]
    Linear { r: usize },
}

impl Family {
    pub fn id(&self) -> String {
        match self {
            Family::Realistic { name } => canonical_name(name).unwrap_or(name).to_string(),
            Family::SequenceI { .. } => "sequence_i".into(),
            Family::SequenceII { .. } => "sequence_ii".into(),
            Family::Linear { .. } => "linear".into(),
        }
    }

    /// Number of nonlinear edges for the sequence families.
    pub fn nonlinear_edges(&self) -> Option<usize> {
        match *self {
            Family::SequenceI { k, .. } | Family::SequenceII { k, .. } => Some(k),
            _ => None,
        }
    }
}

fn default_depth() -> u32 {
    1
}

/// A benchmark family instance plus a gate-count multiplier.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BenchmarkSpec {
    #[serde(flatten)]
    pub family: Family,
    #[serde(default = "default_depth")]
    pub depth_multiplier: u32,
}

impl BenchmarkSpec {
    pub fn new(family: Family) -> Self {
        BenchmarkSpec {
            family,
            depth_multiplier: 1,
        }
    }

    pub fn with_depth(mut self, depth_multiplier: u32) -> Self {
        self.depth_multiplier = depth_multiplier;
        self
    }

    pub fn id(&self) -> String {
        self.family.id()
    }

    /// `key=value` pairs separated by `;`, e.g. `s=8;k=3;depth=1`.
    pub fn params(&self) -> String {
        let head = match &self.family {
            Family::Realistic { .. } => String::new(),
            Family::SequenceI { s, k } | Family::SequenceII { s, k } => format!("s={s};k={k};"),
            Family::Linear { r } => format!("r={r};"),
        };
        format!("{head}depth={}", self.depth_multiplier)
    }

    pub fn validate(&self) -> Result<(), BenchError> {
        if self.depth_multiplier == 0 {
            return Err(BenchError::Range(
                "depth_multiplier must be positive".into(),
            ));
        }
        match &self.family {
            Family::Realistic { name } => {
                canonical_name(name).ok_or_else(|| BenchError::UnknownBenchmark(name.clone()))?;
            }
            Family::SequenceI { s, k } | Family::SequenceII { s, k } => {
                check_sequence(*s, *k)?;
            }
            Family::Linear { r } => {
                if *r == 0 {
                    return Err(BenchError::Range("linear benchmarks need r >= 1".into()));
                }
            }
        }
        Ok(())
    }

    pub fn generate(&self) -> Result<InteractionGraph, BenchError> {
        self.validate()?;
        let g = match &self.family {
            Family::Realistic { name } => load_realistic(name)?,
            Family::SequenceI { s, k } => gen_sequence_i(*s, *k)?,
            Family::SequenceII { s, k } => gen_sequence_ii(*s, *k)?,
            Family::Linear { r } => gen_linear(*r),
        };
        Ok(g.scaled(self.depth_multiplier as u64))
    }
}

impl fmt::Display for BenchmarkSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.id(), self.params())
    }
}

/// Largest `k` for a sequence on `s` vertices: `C(s, 2) - (s - 1)`.
pub fn max_nonlinear_edges(s: usize) -> usize {
    s * (s - 1) / 2 - (s - 1)
}

fn check_sequence(s: usize, k: usize) -> Result<(), BenchError> {
    if s < 4 {
        return Err(BenchError::Range(format!("sequences need s >= 4, got {s}")));
    }
    let max = max_nonlinear_edges(s);
    if k > max {
        return Err(BenchError::Range(format!(
            "k = {k} exceeds the {max} nonlinear edges available for s = {s}"
        )));
    }
    Ok(())
}

fn with_unit_weights(
    n: usize,
    edges: impl IntoIterator<Item = (usize, usize)>,
) -> InteractionGraph {
    let mut g = InteractionGraph::new(n);
    for v in 0..n {
        g.add_single(v, 1).expect("vertex in range");
    }
    for (a, b) in edges {
        g.add_edge(a, b, 1).expect("generated edges are valid");
    }
    g
}

fn path_edges(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..n).map(|v| (v - 1, v))
}

pub fn gen_linear(r: usize) -> InteractionGraph {
    with_unit_weights(r, path_edges(r))
}

/// Nonlinear edges of Sequence I, in order: `(0, s-1)` closes the cycle,
/// then `(v, u)` for `v = 0, 1, ...` and `u = v+2 .. s-1`, skipping edges
/// already present.
pub fn sequence_i_stream(s: usize) -> Vec<(usize, usize)> {
    let mut stream = vec![(0, s - 1)];
    for v in 0..s {
        for u in v + 2..s {
            if (v, u) != (0, s - 1) {
                stream.push((v, u));
            }
        }
    }
    stream
}

/// Nonlinear edges of Sequence II, in order: `(0, s-1)` first, then for span
/// `d = 2 ..= s/2` the chords `(i, (i+d) mod s)` for ascending `i`, skipping
/// pairs already present.
pub fn sequence_ii_stream(s: usize) -> Vec<(usize, usize)> {
    let mut present = vec![vec![false; s]; s];
    for (a, b) in path_edges(s) {
        present[a][b] = true;
    }
    let mut stream = Vec::new();
    let mut add = |a: usize, b: usize, stream: &mut Vec<(usize, usize)>| {
        let (a, b) = (a.min(b), a.max(b));
        if !present[a][b] {
            present[a][b] = true;
            stream.push((a, b));
        }
    };
    add(0, s - 1, &mut stream);
    for d in 2..=s / 2 {
        for i in 0..s {
            add(i, (i + d) % s, &mut stream);
        }
    }
    stream
}

pub fn gen_sequence_i(s: usize, k: usize) -> Result<InteractionGraph, BenchError> {
    check_sequence(s, k)?;
    Ok(with_unit_weights(
        s,
        path_edges(s).chain(sequence_i_stream(s).into_iter().take(k)),
    ))
}

pub fn gen_sequence_ii(s: usize, k: usize) -> Result<InteractionGraph, BenchError> {
    check_sequence(s, k)?;
    Ok(with_unit_weights(
        s,
        path_edges(s).chain(sequence_ii_stream(s).into_iter().take(k)),
    ))
}
