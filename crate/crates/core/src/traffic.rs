//! Traffic coefficients: how busy each circuit qubit is.
//!
//! For qubit `i` with `N_s` single-qubit gates and `N_d` incident two-qubit
//! invocations, the frequency is `f = N_s + 2 N_d` and the traffic
//! coefficient is `t = 1 - 1/f` (zero for an idle qubit). The busiest qubit
//! seeds the heuristic mapper, and the descending-`t` order is its
//! processing queue.

use std::cmp::Ordering;

use crate::graph::InteractionGraph;

#[derive(Debug, Clone, PartialEq)]
pub struct TrafficProfile {
    /// Frequency `f_i` per vertex.
    pub f: Vec<u64>,
    /// Traffic coefficient `t_i` per vertex.
    pub t: Vec<f64>,
    /// Normalization constant with `c * sum(t) = 1`; `None` when `sum(t) = 0`.
    pub c: Option<f64>,
    /// Maximal traffic coefficient (0 for an empty graph).
    pub t_max: f64,
    /// Vertices by descending `t`; idle vertices last; ties by ascending id.
    pub order: Vec<usize>,
}

impl TrafficProfile {
    /// True when no vertex has a positive coefficient (no normalization).
    pub fn is_idle(&self) -> bool {
        self.c.is_none()
    }
}

pub fn traffic_coefficient(f: u64) -> f64 {
    if f == 0 {
        0.0
    } else {
        1.0 - 1.0 / f as f64
    }
}

pub fn traffic_profile(g: &InteractionGraph) -> TrafficProfile {
    let f: Vec<u64> = (0..g.num_vertices())
        .map(|v| g.single_count(v) + 2 * g.two_qubit_count(v))
        .collect();
    let t: Vec<f64> = f.iter().map(|&fi| traffic_coefficient(fi)).collect();
    let idle: Vec<bool> = f.iter().map(|&fi| fi == 0).collect();
    let order = traffic_order(&t, &idle);
    let t_max = order.first().map_or(0.0, |&v| t[v]);
    TrafficProfile {
        c: normalization_constant(&t),
        t_max,
        order,
        f,
        t,
    }
}

/// `1 / sum(t)`, or `None` when the sum is not positive.
pub fn normalization_constant(t: &[f64]) -> Option<f64> {
    let sum: f64 = t.iter().sum();
    (sum > 0.0).then(|| 1.0 / sum)
}

/// Sorts vertex ids by descending coefficient. `idle[v]` pushes `v` behind
/// every non-idle vertex of equal coefficient; remaining ties go to the
/// smaller id.
pub fn traffic_order(t: &[f64], idle: &[bool]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..t.len()).collect();
    order.sort_by(|&a, &b| {
        t[b].total_cmp(&t[a])
            .then_with(|| idle[a].cmp(&idle[b]))
            .then_with(|| a.cmp(&b))
    });
    order
}

/// Total order used wherever the mapper prefers "busier" vertices:
/// higher `t` first, then lower id.
pub(crate) fn busier(profile: &TrafficProfile, a: usize, b: usize) -> Ordering {
    profile.t[b]
        .total_cmp(&profile.t[a])
        .then_with(|| a.cmp(&b))
}
