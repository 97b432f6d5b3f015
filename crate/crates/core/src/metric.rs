//! Success-rate estimate of a placed circuit.
//!
//! `sigma_total = sigma_s * sigma_d * sigma_sw` where
//!
//! * `sigma_s` multiplies `(1 - xi_s)^N_s` over placed qubits,
//! * `sigma_d` multiplies `(1 - xi_d)^N_d` over interaction edges, using the
//!   coupling edge the gate runs on,
//! * `sigma_sw` charges interaction edges whose endpoints are not adjacent on
//!   the device: along the minimum-error route of `l` edges, each of the
//!   first `l - 1` edges contributes `(1 - xi_d)^(2 N_d)` (SWAPs there and
//!   back) and the gate itself runs on the last edge, booked in `sigma_d`.
//!
//! Routing ignores which physical qubits are occupied.

use std::cell::RefCell;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{CouplingGraph, InteractionGraph};
use crate::path::{min_error_path, min_error_tree, Blocking, ErrorPath};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MappingError {
    #[error("mapping has {got} entries for {expected} interaction vertices")]
    WrongLength { got: usize, expected: usize },
    #[error("vertex {vertex} mapped to physical qubit {physical}, which does not exist")]
    OutOfRange { vertex: usize, physical: usize },
    #[error("physical qubit {physical} assigned twice")]
    NotInjective { physical: usize },
}

/// Injective assignment: `assign[i]` is the physical qubit of circuit qubit `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mapping {
    pub assign: Vec<usize>,
}

impl Mapping {
    pub fn new(assign: Vec<usize>) -> Self {
        Mapping { assign }
    }

    pub fn identity(n: usize) -> Self {
        Mapping {
            assign: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.assign.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assign.is_empty()
    }

    pub fn physical(&self, v: usize) -> usize {
        self.assign[v]
    }

    pub fn validate(&self, vertices: usize, physical: usize) -> Result<(), MappingError> {
        if self.assign.len() != vertices {
            return Err(MappingError::WrongLength {
                got: self.assign.len(),
                expected: vertices,
            });
        }
        let mut used = vec![false; physical];
        for (v, &p) in self.assign.iter().enumerate() {
            if p >= physical {
                return Err(MappingError::OutOfRange {
                    vertex: v,
                    physical: p,
                });
            }
            if std::mem::replace(&mut used[p], true) {
                return Err(MappingError::NotInjective { physical: p });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricOptions {
    /// Also multiply `(1 - xi_m)^N_m` into `sigma_s`.
    pub include_measurement: bool,
}

/// A routed interaction edge: the device path between its endpoints.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SwapRoute {
    pub edge: (usize, usize),
    pub path: Vec<usize>,
    /// Number of device edges on `path`.
    pub hops: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub sigma_s: f64,
    pub sigma_d: f64,
    pub sigma_sw: f64,
    pub sigma_total: f64,
    pub swap_routes: Vec<SwapRoute>,
}

impl MetricReport {
    pub fn swap_edge_count(&self) -> usize {
        swap_edge_count(self)
    }
}

/// Number of SWAP edges: `sum(l - 1)` over routed interaction edges.
pub fn swap_edge_count(report: &MetricReport) -> usize {
    report.swap_routes.iter().map(|r| r.hops - 1).sum()
}

/// Source of routes between physical qubits.
pub trait Router {
    fn route(&self, g: &CouplingGraph, from: usize, to: usize) -> ErrorPath;
}

/// Computes each requested route on demand (and memoizes it).
#[derive(Default)]
pub struct LazyRouter {
    cache: RefCell<HashMap<(usize, usize), ErrorPath>>,
}

impl Router for LazyRouter {
    fn route(&self, g: &CouplingGraph, from: usize, to: usize) -> ErrorPath {
        self.cache
            .borrow_mut()
            .entry((from, to))
            .or_insert_with(|| {
                min_error_path(g, from, to, Blocking::NONE).expect("coupling graphs are connected")
            })
            .clone()
    }
}

/// All-pairs routes, computed once per coupling graph.
pub struct RouteTable {
    n: usize,
    routes: Vec<ErrorPath>,
}

impl RouteTable {
    pub fn new(g: &CouplingGraph) -> Self {
        let n = g.num_vertices();
        let mut routes = Vec::with_capacity(n * n);
        for src in 0..n {
            routes.extend(
                min_error_tree(g, src, Blocking::NONE)
                    .into_iter()
                    .map(|p| p.expect("coupling graphs are connected")),
            );
        }
        RouteTable { n, routes }
    }

    pub fn get(&self, from: usize, to: usize) -> &ErrorPath {
        &self.routes[from * self.n + to]
    }
}

impl Router for RouteTable {
    fn route(&self, _g: &CouplingGraph, from: usize, to: usize) -> ErrorPath {
        self.get(from, to).clone()
    }
}

fn pow(base: f64, exp: u64) -> f64 {
    match i32::try_from(exp) {
        Ok(e) => base.powi(e),
        Err(_) => base.powf(exp as f64),
    }
}

/// Single-qubit factor of vertex `v` placed on physical qubit `p`.
pub(crate) fn vertex_factor(
    g: &InteractionGraph,
    q: &CouplingGraph,
    opts: MetricOptions,
    v: usize,
    p: usize,
) -> f64 {
    let mut f = pow(1.0 - q.xi_s()[p], g.single_count(v));
    if opts.include_measurement {
        f *= pow(1.0 - q.xi_m()[p], g.measure_count(v));
    }
    f
}

/// `(sigma_d factor, sigma_sw factor)` of an interaction edge with `count`
/// invocations routed along `path`.
pub(crate) fn route_factors(q: &CouplingGraph, path: &[usize], count: u64) -> (f64, f64) {
    let hops = path.len() - 1;
    let mut swap = 1.0;
    for w in path[..hops].windows(2) {
        let xi = q.edge_rate(w[0], w[1]).expect("route follows device edges");
        swap *= pow(1.0 - xi, 2 * count);
    }
    let last = q
        .edge_rate(path[hops - 1], path[hops])
        .expect("route follows device edges");
    (pow(1.0 - last, count), swap)
}

/// Scores `m` without validating it. Shared by `evaluate` and the brute-force
/// search so both produce bit-identical values.
pub(crate) fn score<R: Router>(
    g: &InteractionGraph,
    q: &CouplingGraph,
    m: &[usize],
    opts: MetricOptions,
    router: &R,
    mut routes: Option<&mut Vec<SwapRoute>>,
) -> (f64, f64, f64) {
    let mut sigma_s = 1.0;
    for (v, &p) in m.iter().enumerate() {
        sigma_s *= vertex_factor(g, q, opts, v, p);
    }

    let mut sigma_d = 1.0;
    let mut sigma_sw = 1.0;
    for ((a, b), count) in g.edges() {
        let (pa, pb) = (m[a], m[b]);
        match q.edge_rate(pa, pb) {
            Some(xi) => sigma_d *= pow(1.0 - xi, count),
            None => {
                let route = router.route(q, pa, pb);
                let (d, sw) = route_factors(q, &route.path, count);
                sigma_d *= d;
                sigma_sw *= sw;
                if let Some(out) = routes.as_deref_mut() {
                    out.push(SwapRoute {
                        edge: (a, b),
                        hops: route.hops(),
                        path: route.path,
                    });
                }
            }
        }
    }
    (sigma_s, sigma_d, sigma_sw)
}

pub(crate) fn report_with<R: Router>(
    g: &InteractionGraph,
    q: &CouplingGraph,
    m: &Mapping,
    opts: MetricOptions,
    router: &R,
) -> MetricReport {
    let mut swap_routes = Vec::new();
    let (sigma_s, sigma_d, sigma_sw) = score(g, q, &m.assign, opts, router, Some(&mut swap_routes));
    MetricReport {
        sigma_s,
        sigma_d,
        sigma_sw,
        sigma_total: sigma_s * sigma_d * sigma_sw,
        swap_routes,
    }
}

/// Scores mapping `m` of `g` onto `q`.
pub fn evaluate(
    g: &InteractionGraph,
    q: &CouplingGraph,
    m: &Mapping,
    opts: MetricOptions,
) -> Result<MetricReport, MappingError> {
    m.validate(g.num_vertices(), q.num_vertices())?;
    Ok(report_with(g, q, m, opts, &LazyRouter::default()))
}
