use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::config::Point;
use super::run::TrialRecord;
use super::ExperimentError;
use crate::graph::InteractionGraph;
use crate::mappers::MapperKind;

/// Aggregate of one (benchmark point, mapper) over all trials.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub benchmark: String,
    pub family_params: String,
    pub n: usize,
    pub vertices: usize,
    /// `vertices / n^2`.
    pub occupancy: f64,
    pub mapper: MapperKind,
    pub trials: usize,
    pub failed: usize,
    /// Over successful trials only; empty when none succeeded.
    pub mean_sigma_total: Option<f64>,
    /// Sample standard deviation; empty with fewer than two successes.
    pub std_sigma_total: Option<f64>,
    pub mean_swap_edges: Option<f64>,
    /// Heuristic mean minus trivial mean at this point; empty unless both
    /// mappers have a mean.
    pub sigma_diff: Option<f64>,
}

/// Folds trial records into one row per (point, mapper), in point order
/// and then mapper order. `records` must be grouped as produced by the
/// runner.
pub fn summarize(
    points: &[Point],
    mappers: &[MapperKind],
    graphs: &[InteractionGraph],
    records: &[TrialRecord],
) -> Vec<SummaryRow> {
    let per_point = if points.is_empty() {
        0
    } else {
        records.len() / points.len()
    };
    let mut rows = Vec::with_capacity(points.len() * mappers.len());
    for (p, point) in points.iter().enumerate() {
        let slice = &records[p * per_point..(p + 1) * per_point];
        let vertices = graphs[p].num_vertices();
        let start = rows.len();
        for &mapper in mappers {
            let mine: Vec<&TrialRecord> = slice.iter().filter(|r| r.mapper == mapper).collect();
            let totals: Vec<f64> = mine.iter().filter_map(|r| r.sigma_total).collect();
            let swaps: Vec<f64> = mine
                .iter()
                .filter_map(|r| r.swap_edges.map(|s| s as f64))
                .collect();
            rows.push(SummaryRow {
                benchmark: point.spec.id(),
                family_params: point.spec.params(),
                n: point.n,
                vertices,
                occupancy: vertices as f64 / (point.n * point.n) as f64,
                mapper,
                trials: mine.len(),
                failed: mine.iter().filter(|r| !r.is_ok()).count(),
                mean_sigma_total: mean(&totals),
                std_sigma_total: sample_std(&totals),
                mean_swap_edges: mean(&swaps),
                sigma_diff: None,
            });
        }
        let mean_of = |kind| {
            rows[start..]
                .iter()
                .find(|r: &&SummaryRow| r.mapper == kind)
                .and_then(|r| r.mean_sigma_total)
        };
        let diff = match (mean_of(MapperKind::Heuristic), mean_of(MapperKind::Trivial)) {
            (Some(h), Some(t)) => Some(h - t),
            _ => None,
        };
        for row in &mut rows[start..] {
            row.sigma_diff = diff;
        }
    }
    rows
}

fn mean(xs: &[f64]) -> Option<f64> {
    (!xs.is_empty()).then(|| xs.iter().sum::<f64>() / xs.len() as f64)
}

fn sample_std(xs: &[f64]) -> Option<f64> {
    if xs.len() < 2 {
        return None;
    }
    let m = mean(xs)?;
    let ss: f64 = xs.iter().map(|x| (x - m) * (x - m)).sum();
    Some((ss / (xs.len() - 1) as f64).sqrt())
}

pub fn write_summary_csv<W: Write>(out: W, rows: &[SummaryRow]) -> Result<(), ExperimentError> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_summary_csv<R: Read>(input: R) -> Result<Vec<SummaryRow>, ExperimentError> {
    csv::Reader::from_reader(input)
        .deserialize()
        .collect::<Result<_, _>>()
        .map_err(Into::into)
}

/// Value of `key` in a `key=value;...` parameter string.
pub fn param_value(params: &str, key: &str) -> Option<usize> {
    params
        .split(';')
        .filter_map(|kv| kv.split_once('='))
        .find(|(k, _)| *k == key)
        .and_then(|(_, v)| v.parse().ok())
}

/// Mean success rates of the heuristic and trivial mappers at one sweep
/// value `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub k: usize,
    pub heuristic: Option<f64>,
    pub trivial: Option<f64>,
}

/// Sweep curve over `key` for the summary rows of `benchmark` on lattice
/// side `n`, sorted by the swept value.
pub fn curve(rows: &[SummaryRow], benchmark: &str, n: usize, key: &str) -> Vec<CurvePoint> {
    let mut points: Vec<CurvePoint> = Vec::new();
    for row in rows.iter().filter(|r| r.benchmark == benchmark && r.n == n) {
        let Some(k) = param_value(&row.family_params, key) else {
            continue;
        };
        let idx = match points.iter().position(|p| p.k == k) {
            Some(i) => i,
            None => {
                points.push(CurvePoint {
                    k,
                    heuristic: None,
                    trivial: None,
                });
                points.len() - 1
            }
        };
        match row.mapper {
            MapperKind::Heuristic => points[idx].heuristic = row.mean_sigma_total,
            MapperKind::Trivial => points[idx].trivial = row.mean_sigma_total,
            MapperKind::BruteForce => {}
        }
    }
    points.sort_by_key(|p| p.k);
    points
}

/// Smallest `k` at which the heuristic mean is at most the trivial mean, or
/// `None` if the heuristic stays strictly above everywhere.
///
/// Points are scanned in the order given. Every point must carry both means.
pub fn detect_critical_point(curve: &[CurvePoint]) -> Result<Option<usize>, ExperimentError> {
    for p in curve {
        let h = p
            .heuristic
            .ok_or(ExperimentError::MissingMapper("heuristic"))?;
        let t = p.trivial.ok_or(ExperimentError::MissingMapper("trivial"))?;
        if h <= t {
            return Ok(Some(p.k));
        }
    }
    if curve.is_empty() {
        return Err(ExperimentError::MissingMapper("heuristic"));
    }
    Ok(None)
}
