use std::io::{Read, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{ExperimentConfig, Point};
use super::summary::{summarize, SummaryRow};
use super::ExperimentError;
use crate::graph::InteractionGraph;
use crate::lattice::make_lattice_numbered;
use crate::mappers::{map_brute_force, map_heuristic, map_trivial, MapError, MapperKind};
use crate::metric::MetricOptions;

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

/// Seed of trial `t`: the `(t + 1)`-th output of a SplitMix64 generator
/// whose state starts at `master`.
///
/// ```text
/// z = master + (t + 1) * 0x9e3779b97f4a7c15        (wrapping)
/// z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9
/// z = (z ^ (z >> 27)) * 0x94d049bb133111eb
/// seed = z ^ (z >> 31)
/// ```
pub fn trial_seed(master: u64, t: u64) -> u64 {
    let mut z = master.wrapping_add(GOLDEN_GAMMA.wrapping_mul(t.wrapping_add(1)));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Ok,
    TooManyQubits,
    SearchSpaceTooLarge,
    InvalidNoise,
}

impl From<&MapError> for RowStatus {
    fn from(e: &MapError) -> Self {
        match e {
            MapError::TooManyQubits { .. } => RowStatus::TooManyQubits,
            MapError::SearchSpaceTooLarge { .. } => RowStatus::SearchSpaceTooLarge,
        }
    }
}

/// One row of `trials.csv`. Metric columns are empty unless `status` is ok.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub benchmark: String,
    pub family_params: String,
    pub n: usize,
    pub trial: usize,
    pub mapper: MapperKind,
    pub status: RowStatus,
    pub sigma_s: Option<f64>,
    pub sigma_d: Option<f64>,
    pub sigma_sw: Option<f64>,
    pub sigma_total: Option<f64>,
    pub swap_edges: Option<usize>,
    pub elapsed_ms: Option<f64>,
}

impl TrialRecord {
    pub fn is_ok(&self) -> bool {
        self.status == RowStatus::Ok
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentOutput {
    pub points: Vec<Point>,
    /// Ordered by (point, trial, mapper).
    pub records: Vec<TrialRecord>,
    pub summary: Vec<SummaryRow>,
}

impl ExperimentOutput {
    /// Writes `trials.csv` and `summary.csv` into `dir`, creating it.
    pub fn write_to(&self, dir: &std::path::Path) -> Result<(), ExperimentError> {
        std::fs::create_dir_all(dir)?;
        write_trials_csv(
            std::fs::File::create(dir.join("trials.csv"))?,
            &self.records,
        )?;
        super::write_summary_csv(
            std::fs::File::create(dir.join("summary.csv"))?,
            &self.summary,
        )?;
        Ok(())
    }
}

fn run_point(
    cfg: &ExperimentConfig,
    mappers: &[MapperKind],
    point: &Point,
    graph: &InteractionGraph,
    trial: usize,
) -> Vec<TrialRecord> {
    let opts = MetricOptions {
        include_measurement: cfg.include_measurement,
    };
    let noise = cfg.noise.with_seed(trial_seed(cfg.seed, trial as u64));
    let device = make_lattice_numbered(point.n, &noise, cfg.numbering);
    mappers
        .iter()
        .map(|&mapper| {
            let mut row = TrialRecord {
                benchmark: point.spec.id(),
                family_params: point.spec.params(),
                n: point.n,
                trial,
                mapper,
                status: RowStatus::Ok,
                sigma_s: None,
                sigma_d: None,
                sigma_sw: None,
                sigma_total: None,
                swap_edges: None,
                elapsed_ms: None,
            };
            let device = match &device {
                Ok(d) => d,
                Err(_) => {
                    row.status = RowStatus::InvalidNoise;
                    return row;
                }
            };
            let result = match mapper {
                MapperKind::BruteForce => map_brute_force(graph, device, opts, cfg.placement_limit),
                MapperKind::Heuristic => map_heuristic(graph, device, opts),
                MapperKind::Trivial => map_trivial(graph, device, opts),
            };
            match result {
                Ok(r) => {
                    row.sigma_s = Some(r.report.sigma_s);
                    row.sigma_d = Some(r.report.sigma_d);
                    row.sigma_sw = Some(r.report.sigma_sw);
                    row.sigma_total = Some(r.report.sigma_total);
                    row.swap_edges = Some(r.report.swap_edge_count());
                    if cfg.timing {
                        row.elapsed_ms = Some(r.elapsed.as_secs_f64() * 1e3);
                    }
                }
                Err(e) => row.status = RowStatus::from(&e),
            }
            row
        })
        .collect()
}

/// Runs every (point, trial, mapper) combination.
///
/// Work is spread over `cfg.threads` workers; results are collected in
/// (point, trial, mapper) order, so output does not depend on scheduling.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutput, ExperimentError> {
    cfg.validate()?;
    let points = cfg.points()?;
    let mappers = cfg.mapper_order();
    let graphs = points
        .iter()
        .map(|p| {
            p.spec
                .generate()
                .map_err(|e| ExperimentError::Config(e.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;

    let jobs: Vec<(usize, usize)> = (0..points.len())
        .flat_map(|p| (0..cfg.trials).map(move |t| (p, t)))
        .collect();
    let work = || -> Vec<TrialRecord> {
        jobs.par_iter()
            .map(|&(p, t)| run_point(cfg, &mappers, &points[p], &graphs[p], t))
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect()
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| ExperimentError::Config(format!("thread pool: {e}")))?;
    let records = pool.install(work);

    let summary = summarize(&points, &mappers, &graphs, &records);
    Ok(ExperimentOutput {
        points,
        records,
        summary,
    })
}

pub fn write_trials_csv<W: Write>(out: W, records: &[TrialRecord]) -> Result<(), ExperimentError> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_trials_csv<R: Read>(input: R) -> Result<Vec<TrialRecord>, ExperimentError> {
    csv::Reader::from_reader(input)
        .deserialize()
        .collect::<Result<_, _>>()
        .map_err(Into::into)
}
