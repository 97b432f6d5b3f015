//! Square-lattice coupling graphs with sampled error rates.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::graph::{CouplingGraph, GraphError};

/// Largest rate a scaled error probability may take.
pub const MAX_SCALED_RATE: f64 = 0.999;

/// How sampled rates grow with the lattice side `n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum NoiseScaling {
    #[default]
    None,
    /// Every rate multiplied by `factor`.
    UniformFactor { factor: f64 },
    /// Every rate multiplied by `base^(n - 3)`, so 3x3 lattices are unchanged.
    ExponentialInN { base: f64 },
}

impl NoiseScaling {
    pub fn factor(&self, n: usize) -> f64 {
        match *self {
            NoiseScaling::None => 1.0,
            NoiseScaling::UniformFactor { factor } => factor,
            NoiseScaling::ExponentialInN { base } => base.powi(n as i32 - 3),
        }
    }
}

/// Sampling ranges for error rates. Each range is `(low, high)` and rates are
/// drawn uniformly from the closed interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NoiseSpec {
    pub single_range: (f64, f64),
    pub two_range: (f64, f64),
    pub measure_range: (f64, f64),
    pub scaling: NoiseScaling,
    pub seed: u64,
}

impl Default for NoiseSpec {
    fn default() -> Self {
        NoiseSpec {
            single_range: (0.0005, 0.005),
            two_range: (0.005, 0.05),
            measure_range: (0.01, 0.05),
            scaling: NoiseScaling::None,
            seed: 0,
        }
    }
}

impl NoiseSpec {
    /// Same rate everywhere, per kind. Handy for closed-form checks.
    pub fn uniform(single: f64, two: f64, measure: f64) -> Self {
        NoiseSpec {
            single_range: (single, single),
            two_range: (two, two),
            measure_range: (measure, measure),
            ..NoiseSpec::default()
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<(), GraphError> {
        for (name, (lo, hi)) in [
            ("single_range", self.single_range),
            ("two_range", self.two_range),
            ("measure_range", self.measure_range),
        ] {
            if !(lo.is_finite() && hi.is_finite() && 0.0 <= lo && lo <= hi && hi < 1.0) {
                return Err(GraphError::InvalidNoise(format!(
                    "{name} = ({lo}, {hi}) must satisfy 0 <= low <= high < 1"
                )));
            }
        }
        let ok = match self.scaling {
            NoiseScaling::None => true,
            NoiseScaling::UniformFactor { factor } => factor.is_finite() && factor >= 0.0,
            NoiseScaling::ExponentialInN { base } => base.is_finite() && base > 0.0,
        };
        if !ok {
            return Err(GraphError::InvalidNoise(format!(
                "bad scaling {:?}",
                self.scaling
            )));
        }
        Ok(())
    }
}

/// How lattice cells are numbered. Vertex ids are the order in which a
/// sequential (trivial) placement fills the device.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Numbering {
    /// Id `r * n + c` for row `r`, column `c`.
    #[default]
    RowMajor,
    /// Boustrophedon: even rows left to right, odd rows right to left, so
    /// consecutive ids are always lattice neighbours.
    Serpentine,
}

impl Numbering {
    /// Vertex id of the cell at (`row`, `col`) on an `n x n` lattice.
    pub fn id(self, n: usize, row: usize, col: usize) -> usize {
        match self {
            Numbering::RowMajor => row * n + col,
            Numbering::Serpentine if row % 2 == 1 => row * n + (n - 1 - col),
            Numbering::Serpentine => row * n + col,
        }
    }
}

/// Builds an `n x n` grid with row-major vertex ids and samples its rates.
pub fn make_lattice(n: usize, noise: &NoiseSpec) -> Result<CouplingGraph, GraphError> {
    make_lattice_numbered(n, noise, Numbering::RowMajor)
}

/// Builds an `n x n` grid numbered by `numbering` and samples its rates.
///
/// Edges are sorted pairs `(a, b)` with `a < b`, in ascending order.
/// Sampling order is fixed (all `xi_s` by vertex id, then all `xi_m`, then
/// `xi_d` in edge order) and uses ChaCha8 seeded from `noise.seed`, so
/// output is identical across platforms.
pub fn make_lattice_numbered(
    n: usize,
    noise: &NoiseSpec,
    numbering: Numbering,
) -> Result<CouplingGraph, GraphError> {
    if n == 0 {
        return Err(GraphError::EmptyLattice);
    }
    noise.validate()?;

    let vertices = n * n;
    let mut layout = vec![(0, 0); vertices];
    let mut edges = Vec::with_capacity(2 * n * (n - 1));
    for row in 0..n {
        for col in 0..n {
            let v = numbering.id(n, row, col);
            layout[v] = (row, col);
            if col + 1 < n {
                let u = numbering.id(n, row, col + 1);
                edges.push((v.min(u), v.max(u)));
            }
            if row + 1 < n {
                let u = numbering.id(n, row + 1, col);
                edges.push((v.min(u), v.max(u)));
            }
        }
    }
    edges.sort_unstable();

    let mut rng = ChaCha8Rng::seed_from_u64(noise.seed);
    let factor = noise.scaling.factor(n);
    let mut sample = |(lo, hi): (f64, f64), count: usize| -> Vec<f64> {
        (0..count)
            .map(|_| {
                let raw = if lo == hi {
                    lo
                } else {
                    rng.random_range(lo..=hi)
                };
                (raw * factor).min(MAX_SCALED_RATE)
            })
            .collect()
    };
    let xi_s = sample(noise.single_range, vertices);
    let xi_m = sample(noise.measure_range, vertices);
    let xi_d = sample(noise.two_range, edges.len());

    CouplingGraph::new(vertices, edges, xi_s, xi_m, xi_d, Some(layout))
}
