//! Initial-mapping algorithms: the noise-aware greedy heuristic, exhaustive
//! search over injective placements, and the identity placement.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{CouplingGraph, InteractionGraph};
use crate::metric::{
    report_with, score, LazyRouter, Mapping, MetricOptions, MetricReport, RouteTable,
};
use crate::path::{min_error_tree, Blocking};
use crate::traffic::{busier, traffic_profile};

/// Default cap on the number of placements the brute-force mapper will score.
pub const DEFAULT_PLACEMENT_LIMIT: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("circuit needs {needed} qubits but the device has {available}")]
    TooManyQubits { needed: usize, available: usize },
    #[error("search space of {count} placements exceeds the limit of {limit}")]
    SearchSpaceTooLarge { count: u128, limit: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MapperKind {
    #[serde(alias = "brute")]
    BruteForce,
    Heuristic,
    Trivial,
}

impl MapperKind {
    pub const ALL: [MapperKind; 3] = [
        MapperKind::BruteForce,
        MapperKind::Heuristic,
        MapperKind::Trivial,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            MapperKind::BruteForce => "brute_force",
            MapperKind::Heuristic => "heuristic",
            MapperKind::Trivial => "trivial",
        }
    }
}

impl fmt::Display for MapperKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MapperKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "brute_force" | "brute" | "brute-force" => Ok(MapperKind::BruteForce),
            "heuristic" => Ok(MapperKind::Heuristic),
            "trivial" => Ok(MapperKind::Trivial),
            other => Err(format!("unknown mapper `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MapperResult {
    pub mapping: Mapping,
    pub report: MetricReport,
    pub elapsed: Duration,
    pub mapper: MapperKind,
}

fn check_fits(g: &InteractionGraph, q: &CouplingGraph) -> Result<(), MapError> {
    if g.num_vertices() > q.num_vertices() {
        return Err(MapError::TooManyQubits {
            needed: g.num_vertices(),
            available: q.num_vertices(),
        });
    }
    Ok(())
}

/// Runs the mapper selected by `kind`.
pub fn run_mapper(
    kind: MapperKind,
    g: &InteractionGraph,
    q: &CouplingGraph,
    opts: MetricOptions,
) -> Result<MapperResult, MapError> {
    match kind {
        MapperKind::BruteForce => map_brute_force(g, q, opts, DEFAULT_PLACEMENT_LIMIT),
        MapperKind::Heuristic => map_heuristic(g, q, opts),
        MapperKind::Trivial => map_trivial(g, q, opts),
    }
}

/// Circuit qubit `i` goes to physical qubit `i`.
pub fn map_trivial(
    g: &InteractionGraph,
    q: &CouplingGraph,
    opts: MetricOptions,
) -> Result<MapperResult, MapError> {
    let start = Instant::now();
    check_fits(g, q)?;
    let mapping = Mapping::identity(g.num_vertices());
    let report = report_with(g, q, &mapping, opts, &LazyRouter::default());
    Ok(MapperResult {
        mapping,
        report,
        elapsed: start.elapsed(),
        mapper: MapperKind::Trivial,
    })
}

/// `physical! / (physical - vertices)!`, saturating at `u128::MAX`.
pub fn placement_count(vertices: usize, physical: usize) -> u128 {
    if vertices > physical {
        return 0;
    }
    ((physical - vertices + 1)..=physical).fold(1u128, |acc, k| acc.saturating_mul(k as u128))
}

/// Scores every injective placement and keeps the best one.
///
/// Placements are visited in lexicographic order of the assignment vector and
/// only a strictly better score replaces the incumbent, so ties resolve to the
/// lexicographically smallest placement.
pub fn map_brute_force(
    g: &InteractionGraph,
    q: &CouplingGraph,
    opts: MetricOptions,
    limit: u64,
) -> Result<MapperResult, MapError> {
    let start = Instant::now();
    check_fits(g, q)?;
    let count = placement_count(g.num_vertices(), q.num_vertices());
    if count > limit as u128 {
        return Err(MapError::SearchSpaceTooLarge { count, limit });
    }

    let table = RouteTable::new(q);
    let mut search = PlacementSearch {
        g,
        q,
        opts,
        table: &table,
        current: Vec::with_capacity(g.num_vertices()),
        used: vec![false; q.num_vertices()],
        best: None,
    };
    search.descend();
    let (_, best) = search.best.expect("at least one placement exists");

    let mapping = Mapping::new(best);
    let report = report_with(g, q, &mapping, opts, &table);
    Ok(MapperResult {
        mapping,
        report,
        elapsed: start.elapsed(),
        mapper: MapperKind::BruteForce,
    })
}

struct PlacementSearch<'a> {
    g: &'a InteractionGraph,
    q: &'a CouplingGraph,
    opts: MetricOptions,
    table: &'a RouteTable,
    current: Vec<usize>,
    used: Vec<bool>,
    best: Option<(f64, Vec<usize>)>,
}

impl PlacementSearch<'_> {
    fn descend(&mut self) {
        if self.current.len() == self.g.num_vertices() {
            let (s, d, sw) = score(self.g, self.q, &self.current, self.opts, self.table, None);
            let total = s * d * sw;
            if self.best.as_ref().is_none_or(|(b, _)| total > *b) {
                self.best = Some((total, self.current.clone()));
            }
            return;
        }
        for p in 0..self.q.num_vertices() {
            if self.used[p] {
                continue;
            }
            self.used[p] = true;
            self.current.push(p);
            self.descend();
            self.current.pop();
            self.used[p] = false;
        }
    }
}

/// Noise-aware greedy placement.
///
/// 1. The busiest circuit qubit (largest traffic coefficient) goes on the
///    endpoint with the lower single-qubit error of the device edge with the
///    lowest two-qubit error.
/// 2. Remaining qubits are placed in descending traffic order. Each one is
///    anchored to its already-placed neighbour with the heaviest shared edge
///    (or, without placed neighbours, to the busiest placed qubit) and put on
///    the free physical qubit reachable from the anchor's position at minimum
///    routing error, never routing through occupied qubits. If no free qubit
///    is reachable that way, occupied qubits may be crossed.
pub fn map_heuristic(
    g: &InteractionGraph,
    q: &CouplingGraph,
    opts: MetricOptions,
) -> Result<MapperResult, MapError> {
    let start = Instant::now();
    check_fits(g, q)?;
    let n = g.num_vertices();
    let mut assign = vec![usize::MAX; n];

    if n > 0 {
        let profile = traffic_profile(g);
        let mut occupied = vec![false; q.num_vertices()];
        let mut placed: Vec<usize> = Vec::with_capacity(n);

        let seed = profile.order[0];
        let seed_pos = seed_position(q);
        assign[seed] = seed_pos;
        occupied[seed_pos] = true;
        placed.push(seed);

        for &v in &profile.order[1..] {
            let anchor = g
                .neighbors(v)
                .into_iter()
                .filter(|&(u, _)| assign[u] != usize::MAX)
                .min_by(|&(a, wa), &(b, wb)| wb.cmp(&wa).then_with(|| busier(&profile, a, b)))
                .map(|(u, _)| u)
                .unwrap_or_else(|| {
                    *placed
                        .iter()
                        .min_by(|&&a, &&b| busier(&profile, a, b))
                        .expect("the seed is placed")
                });

            let from = assign[anchor];
            let target = nearest_free(q, from, &occupied, true)
                .or_else(|| nearest_free(q, from, &occupied, false))
                .expect("a free physical qubit exists while |V| <= |V'|");
            assign[v] = target;
            occupied[target] = true;
            placed.push(v);
        }
    }

    let mapping = Mapping::new(assign);
    let report = report_with(g, q, &mapping, opts, &LazyRouter::default());
    Ok(MapperResult {
        mapping,
        report,
        elapsed: start.elapsed(),
        mapper: MapperKind::Heuristic,
    })
}

/// Lower-`xi_s` endpoint of the lowest-`xi_d` edge. Ties go to the earlier
/// edge and the smaller id. A device without edges yields its best vertex.
fn seed_position(q: &CouplingGraph) -> usize {
    let xi_s = q.xi_s();
    let by_rate = |a: &usize, b: &usize| xi_s[*a].total_cmp(&xi_s[*b]).then(a.cmp(b));
    let best_edge = q
        .xi_d()
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1).then(a.0.cmp(&b.0)))
        .map(|(i, _)| q.edges()[i]);
    match best_edge {
        Some((a, b)) => [a, b].into_iter().min_by(by_rate).expect("two endpoints"),
        None => (0..q.num_vertices())
            .min_by(by_rate)
            .expect("non-empty device"),
    }
}

/// Cheapest free vertex from `from`, preferring fewer hops then smaller id.
fn nearest_free(q: &CouplingGraph, from: usize, occupied: &[bool], block: bool) -> Option<usize> {
    let mut blocked = occupied.to_vec();
    blocked[from] = false;
    let blocking = if block {
        Blocking::new(&blocked, false)
    } else {
        Blocking::NONE
    };
    min_error_tree(q, from, blocking)
        .into_iter()
        .enumerate()
        .filter(|(p, _)| !occupied[*p])
        .filter_map(|(p, path)| path.map(|path| (p, path)))
        .min_by(|(pa, a), (pb, b)| {
            a.cost
                .total_cmp(&b.cost)
                .then_with(|| a.hops().cmp(&b.hops()))
                .then_with(|| pa.cmp(pb))
        })
        .map(|(p, _)| p)
}
