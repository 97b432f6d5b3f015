//! Minimum-error routing on a coupling graph.
//!
//! An edge with two-qubit error rate `xi` costs `-ln(1 - xi)`, so the cost of
//! a path is `-ln` of the probability that one gate on every edge succeeds and
//! Dijkstra's additive optimum is the multiplicative optimum.
//!
//! Ties are broken by hop count and then by the lexicographically smallest
//! vertex sequence starting at the source. Labels carry their full path so
//! the comparison is exact; graphs here are small (at most a few hundred
//! vertices).

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use thiserror::Error;

use crate::graph::CouplingGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("no path from {src} to {dst} avoiding blocked vertices")]
pub struct NoPath {
    pub src: usize,
    pub dst: usize,
}

/// A route from `path[0]` to `path[last]` and its additive error cost.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorPath {
    pub path: Vec<usize>,
    pub cost: f64,
}

impl ErrorPath {
    pub fn hops(&self) -> usize {
        self.path.len() - 1
    }

    /// `exp(-cost)`: probability that one gate per edge succeeds.
    pub fn success(&self) -> f64 {
        (-self.cost).exp()
    }

    fn cmp_label(&self, other: &Self) -> Ordering {
        self.cost
            .total_cmp(&other.cost)
            .then_with(|| self.path.len().cmp(&other.path.len()))
            .then_with(|| self.path.cmp(&other.path))
    }
}

/// Additive cost of one edge with error rate `xi`.
pub fn edge_cost(xi: f64) -> f64 {
    -(-xi).ln_1p()
}

struct Entry(ErrorPath);

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Entry {}
impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp_label(&other.0)
    }
}

/// Which vertices may not be used as intermediate hops.
#[derive(Debug, Clone, Copy)]
pub struct Blocking<'a> {
    blocked: &'a [bool],
    allow_blocked_dst: bool,
}

impl<'a> Blocking<'a> {
    pub const NONE: Blocking<'static> = Blocking {
        blocked: &[],
        allow_blocked_dst: true,
    };

    /// `blocked[v]` marks vertex `v`. Blocked vertices are never passed
    /// through; with `allow_blocked_dst` they can still end a path.
    pub fn new(blocked: &'a [bool], allow_blocked_dst: bool) -> Self {
        Blocking {
            blocked,
            allow_blocked_dst,
        }
    }

    fn is_blocked(&self, v: usize) -> bool {
        self.blocked.get(v).copied().unwrap_or(false)
    }
}

fn search(
    g: &CouplingGraph,
    src: usize,
    target: Option<usize>,
    blocking: Blocking<'_>,
) -> Vec<Option<ErrorPath>> {
    let n = g.num_vertices();
    let mut best: Vec<Option<ErrorPath>> = vec![None; n];
    let mut settled = vec![false; n];
    let mut heap = BinaryHeap::new();

    let start = ErrorPath {
        path: vec![src],
        cost: 0.0,
    };
    best[src] = Some(start.clone());
    heap.push(Reverse(Entry(start)));

    while let Some(Reverse(Entry(label))) = heap.pop() {
        let v = *label.path.last().expect("paths are never empty");
        if settled[v] {
            continue;
        }
        settled[v] = true;
        if Some(v) == target {
            break;
        }
        if v != src && blocking.is_blocked(v) {
            continue;
        }
        for &(u, e) in g.adjacent(v) {
            if settled[u] || (blocking.is_blocked(u) && !blocking.allow_blocked_dst) {
                continue;
            }
            let mut path = label.path.clone();
            path.push(u);
            let candidate = ErrorPath {
                path,
                cost: label.cost + edge_cost(g.xi_d()[e]),
            };
            let improves = match &best[u] {
                None => true,
                Some(cur) => candidate.cmp_label(cur) == Ordering::Less,
            };
            if improves {
                best[u] = Some(candidate.clone());
                heap.push(Reverse(Entry(candidate)));
            }
        }
    }

    for (v, done) in settled.iter().enumerate() {
        if !done {
            best[v] = None;
        }
    }
    best
}

/// Minimum-error path from `src` to `dst`.
///
/// `src` is never treated as blocked. `dst` follows `Blocking`'s
/// `allow_blocked_dst` flag.
pub fn min_error_path(
    g: &CouplingGraph,
    src: usize,
    dst: usize,
    blocking: Blocking<'_>,
) -> Result<ErrorPath, NoPath> {
    assert!(src < g.num_vertices() && dst < g.num_vertices());
    if src == dst {
        return Ok(ErrorPath {
            path: vec![src],
            cost: 0.0,
        });
    }
    search(g, src, Some(dst), blocking)
        .swap_remove(dst)
        .ok_or(NoPath { src, dst })
}

/// Minimum-error paths from `src` to every vertex (`None` where unreachable).
pub fn min_error_tree(
    g: &CouplingGraph,
    src: usize,
    blocking: Blocking<'_>,
) -> Vec<Option<ErrorPath>> {
    assert!(src < g.num_vertices());
    search(g, src, None, blocking)
}
