//! Noise-aware initial qubit mapping.
//!
//! A circuit ([`CircuitIR`]) becomes an [`InteractionGraph`]; a device is a
//! [`CouplingGraph`] with per-qubit and per-edge error rates (for example a
//! square lattice from [`make_lattice`]). A [`Mapping`] places circuit qubits
//! on device qubits and [`evaluate`] scores it as a product of gate success
//! probabilities, charging SWAP chains for interacting qubits that are not
//! adjacent. Three mappers produce mappings: [`map_heuristic`] (greedy,
//! traffic-ordered), [`map_brute_force`] (exhaustive) and [`map_trivial`]
//! (identity). [`experiment`] runs seeded Monte-Carlo sweeps over the
//! benchmark families in [`benchgen`].
//!
//! ```
//! use qmap_core::*;
//!
//! let circuit = parse_circuit("qubits 3\nh q[0]\ncnot q[0],q[1]\ncnot q[1],q[2]\ncnot q[0],q[2]\n").unwrap();
//! let g = interaction_graph(&circuit);
//! let device = make_lattice(3, &NoiseSpec::default().with_seed(1)).unwrap();
//! let best = map_brute_force(&g, &device, MetricOptions::default(), DEFAULT_PLACEMENT_LIMIT).unwrap();
//! let greedy = map_heuristic(&g, &device, MetricOptions::default()).unwrap();
//! assert!(best.report.sigma_total >= greedy.report.sigma_total);
//! ```

pub mod benchgen;
pub mod circuit;
pub mod experiment;
pub mod graph;
pub mod interchange;
pub mod lattice;
pub mod mappers;
pub mod metric;
pub mod path;
pub mod traffic;

pub use benchgen::{
    gen_linear, gen_sequence_i, gen_sequence_ii, load_realistic, load_realistic_from, BenchError,
    BenchmarkSpec, Family,
};
pub use circuit::{
    parse_circuit, tally_gates, CircuitIR, GateEvent, GateKind, GateTally, ParseError,
};
pub use graph::{interaction_graph, CouplingGraph, GraphError, InteractionGraph};
pub use interchange::{
    coupling_from_json, coupling_to_json, interaction_from_json, interaction_to_json,
    InterchangeError,
};
pub use lattice::{make_lattice, make_lattice_numbered, NoiseScaling, NoiseSpec, Numbering};
pub use mappers::{
    map_brute_force, map_heuristic, map_trivial, placement_count, run_mapper, MapError, MapperKind,
    MapperResult, DEFAULT_PLACEMENT_LIMIT,
};
pub use metric::{
    evaluate, swap_edge_count, Mapping, MappingError, MetricOptions, MetricReport, SwapRoute,
};
pub use path::{edge_cost, min_error_path, min_error_tree, Blocking, ErrorPath, NoPath};
pub use traffic::{
    normalization_constant, traffic_coefficient, traffic_order, traffic_profile, TrafficProfile,
};
