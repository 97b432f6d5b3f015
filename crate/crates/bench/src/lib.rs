//! Fixed workloads shared by the criterion benches.

use qmap_core::{gen_sequence_ii, make_lattice, CouplingGraph, InteractionGraph, NoiseSpec};

/// Lattice of side `n` with default noise ranges and a fixed seed.
pub fn device(n: usize) -> CouplingGraph {
    make_lattice(n, &NoiseSpec::default().with_seed(0x5eed)).expect("default noise is valid")
}

/// Breadth-first sequence benchmark on `s` qubits with `k` nonlinear edges.
pub fn circuit(s: usize, k: usize) -> InteractionGraph {
    gen_sequence_ii(s, k).expect("benchmark parameters are in range")
}
