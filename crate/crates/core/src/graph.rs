//! Interaction graphs (what a circuit needs) and coupling graphs (what a
//! device offers).

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::circuit::{CircuitIR, GateTally};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph with {vertices} vertices")]
    VertexOutOfRange { vertex: usize, vertices: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("edge ({0}, {1}) has zero weight")]
    ZeroWeight(usize, usize),
    #[error("coupling graph is not connected")]
    Disconnected,
    #[error("invalid error rate {value} for {what}")]
    InvalidRate { what: String, value: f64 },
    #[error("invalid noise specification: {0}")]
    InvalidNoise(String),
    #[error("{0} has {1} entries, expected {2}")]
    LengthMismatch(&'static str, usize, usize),
    #[error("lattice size must be at least 1")]
    EmptyLattice,
}

/// Weighted interaction graph of a circuit.
///
/// Vertex weights are single-qubit gate counts (`single`) and measurement
/// counts (`measure`); edge weights are two-qubit gate counts keyed by
/// `(low, high)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InteractionGraph {
    single: Vec<u64>,
    measure: Vec<u64>,
    edges: BTreeMap<(usize, usize), u64>,
}

impl InteractionGraph {
    /// Graph with `n` isolated, gate-free vertices.
    pub fn new(n: usize) -> Self {
        InteractionGraph {
            single: vec![0; n],
            measure: vec![0; n],
            edges: BTreeMap::new(),
        }
    }

    pub fn from_tally(qubit_count: usize, tally: &GateTally) -> Result<Self, GraphError> {
        let mut g = InteractionGraph::new(qubit_count);
        for (&v, &count) in &tally.single {
            g.add_single(v, count)?;
        }
        for (&v, &count) in &tally.measure {
            g.check_vertex(v)?;
            g.measure[v] += count;
        }
        for (&(a, b), &count) in &tally.two {
            g.add_edge(a, b, count)?;
        }
        Ok(g)
    }

    /// Builds a graph from an explicit edge list with unit weights.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = InteractionGraph::new(n);
        for &(a, b) in edges {
            g.add_edge(a, b, 1)?;
        }
        Ok(g)
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.num_vertices() {
            return Err(GraphError::VertexOutOfRange {
                vertex: v,
                vertices: self.num_vertices(),
            });
        }
        Ok(())
    }

    pub fn add_single(&mut self, v: usize, count: u64) -> Result<(), GraphError> {
        self.check_vertex(v)?;
        self.single[v] += count;
        Ok(())
    }

    pub fn add_measure(&mut self, v: usize, count: u64) -> Result<(), GraphError> {
        self.check_vertex(v)?;
        self.measure[v] += count;
        Ok(())
    }

    /// Adds `count` two-qubit invocations between `a` and `b`, creating the
    /// edge if needed.
    pub fn add_edge(&mut self, a: usize, b: usize, count: u64) -> Result<(), GraphError> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        if a == b {
            return Err(GraphError::SelfLoop(a));
        }
        if count == 0 {
            return Err(GraphError::ZeroWeight(a, b));
        }
        *self.edges.entry((a.min(b), a.max(b))).or_default() += count;
        Ok(())
    }

    pub fn num_vertices(&self) -> usize {
        self.single.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn single_count(&self, v: usize) -> u64 {
        self.single[v]
    }

    pub fn measure_count(&self, v: usize) -> u64 {
        self.measure[v]
    }

    pub fn edge_weight(&self, a: usize, b: usize) -> Option<u64> {
        self.edges.get(&(a.min(b), a.max(b))).copied()
    }

    /// Edges as `((low, high), count)` in ascending key order.
    pub fn edges(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.edges.iter().map(|(&k, &w)| (k, w))
    }

    /// Neighbours of `v` with the shared edge weight, ascending by id.
    pub fn neighbors(&self, v: usize) -> Vec<(usize, u64)> {
        let mut out: Vec<(usize, u64)> = self
            .edges
            .iter()
            .filter_map(|(&(a, b), &w)| match () {
                _ if a == v => Some((b, w)),
                _ if b == v => Some((a, w)),
                _ => None,
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Sum of two-qubit invocation counts over all edges incident to `v`.
    pub fn two_qubit_count(&self, v: usize) -> u64 {
        self.edges
            .iter()
            .filter(|(&(a, b), _)| a == v || b == v)
            .map(|(_, &w)| w)
            .sum()
    }

    pub fn vertex_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.num_vertices()];
        for &(a, b) in self.edges.keys() {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.vertex_degrees().into_iter().max().unwrap_or(0)
    }

    /// Multiplies every gate count by `k`.
    pub fn scaled(&self, k: u64) -> Self {
        InteractionGraph {
            single: self.single.iter().map(|c| c * k).collect(),
            measure: self.measure.iter().map(|c| c * k).collect(),
            edges: self.edges.iter().map(|(&e, &w)| (e, w * k)).collect(),
        }
        .without_zero_edges()
    }

    fn without_zero_edges(mut self) -> Self {
        self.edges.retain(|_, w| *w > 0);
        self
    }

    /// True when every vertex can reach every other one through edges.
    pub fn is_connected(&self) -> bool {
        let n = self.num_vertices();
        if n <= 1 {
            return true;
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in self.edges.keys() {
            adj[a].push(b);
            adj[b].push(a);
        }
        reachable_count(&adj, 0) == n
    }
}

/// Interaction graph of a circuit; gate-free qubits stay as isolated vertices.
pub fn interaction_graph(circuit: &CircuitIR) -> InteractionGraph {
    InteractionGraph::from_tally(circuit.qubit_count, &circuit.tally())
        .expect("a parsed circuit only references declared qubits")
}

/// Device connectivity annotated with error rates.
///
/// Edges are stored sorted as `(low, high)` pairs; `xi_d[i]` belongs to
/// `edges[i]`. The graph is connected and every rate lies in `[0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingGraph {
    num_vertices: usize,
    edges: Vec<(usize, usize)>,
    xi_s: Vec<f64>,
    xi_m: Vec<f64>,
    xi_d: Vec<f64>,
    layout: Option<Vec<(usize, usize)>>,
    adjacency: Vec<Vec<(usize, usize)>>,
    edge_index: HashMap<(usize, usize), usize>,
}

impl CouplingGraph {
    /// Validates and builds a coupling graph. `edges[i]` carries `xi_d[i]`;
    /// edges may be given in any order and orientation.
    pub fn new(
        num_vertices: usize,
        edges: Vec<(usize, usize)>,
        xi_s: Vec<f64>,
        xi_m: Vec<f64>,
        xi_d: Vec<f64>,
        layout: Option<Vec<(usize, usize)>>,
    ) -> Result<Self, GraphError> {
        if num_vertices == 0 {
            return Err(GraphError::EmptyLattice);
        }
        if xi_s.len() != num_vertices {
            return Err(GraphError::LengthMismatch("xi_s", xi_s.len(), num_vertices));
        }
        if xi_m.len() != num_vertices {
            return Err(GraphError::LengthMismatch("xi_m", xi_m.len(), num_vertices));
        }
        if xi_d.len() != edges.len() {
            return Err(GraphError::LengthMismatch("xi_d", xi_d.len(), edges.len()));
        }
        if let Some(l) = &layout {
            if l.len() != num_vertices {
                return Err(GraphError::LengthMismatch("layout", l.len(), num_vertices));
            }
        }
        for (what, rates) in [("xi_s", &xi_s), ("xi_m", &xi_m), ("xi_d", &xi_d)] {
            if let Some(&bad) = rates.iter().find(|r| !(0.0..1.0).contains(*r)) {
                return Err(GraphError::InvalidRate {
                    what: what.to_string(),
                    value: bad,
                });
            }
        }

        let mut paired: Vec<((usize, usize), f64)> = Vec::with_capacity(edges.len());
        for (&(a, b), &rate) in edges.iter().zip(&xi_d) {
            for v in [a, b] {
                if v >= num_vertices {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: v,
                        vertices: num_vertices,
                    });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            paired.push(((a.min(b), a.max(b)), rate));
        }
        paired.sort_by_key(|x| x.0);
        if let Some(w) = paired.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(GraphError::DuplicateEdge(w[0].0 .0, w[0].0 .1));
        }

        let edges: Vec<(usize, usize)> = paired.iter().map(|p| p.0).collect();
        let xi_d: Vec<f64> = paired.iter().map(|p| p.1).collect();
        let mut adjacency = vec![Vec::new(); num_vertices];
        let mut edge_index = HashMap::with_capacity(edges.len());
        for (i, &(a, b)) in edges.iter().enumerate() {
            adjacency[a].push((b, i));
            adjacency[b].push((a, i));
            edge_index.insert((a, b), i);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }

        let plain: Vec<Vec<usize>> = adjacency
            .iter()
            .map(|l| l.iter().map(|&(v, _)| v).collect())
            .collect();
        if reachable_count(&plain, 0) != num_vertices {
            return Err(GraphError::Disconnected);
        }

        Ok(CouplingGraph {
            num_vertices,
            edges,
            xi_s,
            xi_m,
            xi_d,
            layout,
            adjacency,
            edge_index,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn xi_s(&self) -> &[f64] {
        &self.xi_s
    }

    pub fn xi_m(&self) -> &[f64] {
        &self.xi_m
    }

    pub fn xi_d(&self) -> &[f64] {
        &self.xi_d
    }

    pub fn layout(&self) -> Option<&[(usize, usize)]> {
        self.layout.as_deref()
    }

    /// `(neighbour, edge index)` pairs, ascending by neighbour.
    pub fn adjacent(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn edge_id(&self, a: usize, b: usize) -> Option<usize> {
        self.edge_index.get(&(a.min(b), a.max(b))).copied()
    }

    pub fn edge_rate(&self, a: usize, b: usize) -> Option<f64> {
        self.edge_id(a, b).map(|i| self.xi_d[i])
    }

    pub fn vertex_degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.vertex_degrees().into_iter().max().unwrap_or(0)
    }

    /// Returns a copy with the given rates replaced; the topology is kept.
    pub fn with_rates(
        &self,
        xi_s: Vec<f64>,
        xi_m: Vec<f64>,
        xi_d: Vec<f64>,
    ) -> Result<Self, GraphError> {
        CouplingGraph::new(
            self.num_vertices,
            self.edges.clone(),
            xi_s,
            xi_m,
            xi_d,
            self.layout.clone(),
        )
    }
}

fn reachable_count(adj: &[Vec<usize>], start: usize) -> usize {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![start];
    seen[start] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &u in &adj[v] {
            if !seen[u] {
                seen[u] = true;
                count += 1;
                stack.push(u);
            }
        }
    }
    count
}
