//! Independent oracles and random instance generators shared by the
//! integration tests. Nothing here calls the library's routing or scoring
//! internals unless a helper says so.

#![allow(dead_code)]

use qmap_core::{
    evaluate, make_lattice, CouplingGraph, InteractionGraph, Mapping, MetricOptions, NoiseSpec,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const OPTS: MetricOptions = MetricOptions {
    include_measurement: false,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random interaction graph: `n` vertices, single-qubit counts in `0..=4`,
/// each pair present with probability `p` and weight in `1..=4`.
pub fn random_interaction(rng: &mut ChaCha8Rng, n: usize, p: f64) -> InteractionGraph {
    let mut g = InteractionGraph::new(n);
    for v in 0..n {
        g.add_single(v, rng.random_range(0..=4)).unwrap();
    }
    for a in 0..n {
        for b in a + 1..n {
            if rng.random_bool(p) {
                g.add_edge(a, b, rng.random_range(1..=4)).unwrap();
            }
        }
    }
    g
}

pub fn random_lattice(rng: &mut ChaCha8Rng, n: usize) -> CouplingGraph {
    make_lattice(n, &NoiseSpec::default().with_seed(rng.random())).unwrap()
}

/// Connected random device: a random spanning tree plus extra edges.
pub fn random_connected(rng: &mut ChaCha8Rng, n: usize, extra: f64) -> CouplingGraph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.random_range(0..v), v));
    }
    for a in 0..n {
        for b in a + 1..n {
            if !edges.contains(&(a, b)) && rng.random_bool(extra) {
                edges.push((a, b));
            }
        }
    }
    let xi_d = edges.iter().map(|_| rng.random_range(0.001..0.2)).collect();
    let xi_s = (0..n).map(|_| rng.random_range(0.0..0.01)).collect();
    let xi_m = (0..n).map(|_| rng.random_range(0.0..0.05)).collect();
    CouplingGraph::new(n, edges, xi_s, xi_m, xi_d, None).unwrap()
}

fn rate(q: &CouplingGraph, a: usize, b: usize) -> Option<f64> {
    q.edges()
        .iter()
        .position(|&e| e == (a.min(b), a.max(b)))
        .map(|i| q.xi_d()[i])
}

/// Enumerates every simple path from `src` to `dst` by DFS and returns the
/// one with the largest success product; ties go to fewer hops, then the
/// lexicographically smaller vertex sequence.
pub fn best_simple_path(q: &CouplingGraph, src: usize, dst: usize) -> Option<(f64, Vec<usize>)> {
    fn dfs(
        q: &CouplingGraph,
        path: &mut Vec<usize>,
        on_path: &mut Vec<bool>,
        dst: usize,
        best: &mut Option<(f64, Vec<usize>)>,
    ) {
        let v = *path.last().unwrap();
        if v == dst {
            let cost: f64 = path
                .windows(2)
                .map(|w| -(1.0 - rate(q, w[0], w[1]).unwrap()).ln())
                .sum();
            let better = match best {
                None => true,
                Some((c, p)) => {
                    cost < *c || (cost == *c && (path.len(), &path[..]) < (p.len(), &p[..]))
                }
            };
            if better {
                *best = Some((cost, path.clone()));
            }
            return;
        }
        for u in 0..q.num_vertices() {
            if !on_path[u] && rate(q, v, u).is_some() {
                on_path[u] = true;
                path.push(u);
                dfs(q, path, on_path, dst, best);
                path.pop();
                on_path[u] = false;
            }
        }
    }
    let mut on_path = vec![false; q.num_vertices()];
    on_path[src] = true;
    let mut best = None;
    dfs(q, &mut vec![src], &mut on_path, dst, &mut best);
    best
}

/// Success-rate factors `(sigma_s, sigma_d, sigma_sw)` computed from first
/// principles: every gate is an explicit factor `(1 - xi)` multiplied in
/// one at a time, routes come from [`best_simple_path`].
pub fn oracle_sigma(g: &InteractionGraph, q: &CouplingGraph, assign: &[usize]) -> (f64, f64, f64) {
    let mut s = 1.0;
    for (v, &p) in assign.iter().enumerate() {
        for _ in 0..g.single_count(v) {
            s *= 1.0 - q.xi_s()[p];
        }
    }
    let (mut d, mut sw) = (1.0, 1.0);
    for ((a, b), count) in g.edges() {
        let (pa, pb) = (assign[a], assign[b]);
        let path = match rate(q, pa, pb) {
            Some(_) => vec![pa, pb],
            None => best_simple_path(q, pa, pb).unwrap().1,
        };
        let hops = path.len() - 1;
        for (i, w) in path.windows(2).enumerate() {
            let ok = 1.0 - rate(q, w[0], w[1]).unwrap();
            for _ in 0..count {
                if i + 1 == hops {
                    d *= ok;
                } else {
                    // one SWAP there and one back
                    sw *= ok * ok;
                }
            }
        }
    }
    (s, d, sw)
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

/// Naive exhaustive search: counts through every tuple in
/// `0..|V'|` ^ `|V|` in lexicographic order, skips non-injective ones and
/// keeps the first strictly best score according to the library's
/// `evaluate`.
pub fn naive_best_placement(g: &InteractionGraph, q: &CouplingGraph) -> (Vec<usize>, f64) {
    let (n, m) = (g.num_vertices(), q.num_vertices());
    let mut digits = vec![0usize; n];
    let mut best: Option<(Vec<usize>, f64)> = None;
    loop {
        let mut seen = vec![false; m];
        let injective = digits
            .iter()
            .all(|&p| !std::mem::replace(&mut seen[p], true));
        if injective {
            let total = evaluate(g, q, &Mapping::new(digits.clone()), OPTS)
                .unwrap()
                .sigma_total;
            if best.as_ref().is_none_or(|(_, b)| total > *b) {
                best = Some((digits.clone(), total));
            }
        }
        let mut i = n;
        loop {
            if i == 0 {
                return best.expect("some placement exists");
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < m {
                break;
            }
            digits[i] = 0;
        }
    }
}
