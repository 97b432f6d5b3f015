use std::path::{Path, PathBuf};
use std::str::FromStr;

use plotters::prelude::*;

use super::summary::{param_value, SummaryRow};
use super::ExperimentError;
use crate::mappers::MapperKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotKind {
    /// Grouped bars of mean success rate per benchmark, one chart per `n`.
    Bars,
    /// Mean success rate against `k`, one chart per (benchmark, `s`, `n`).
    Sequence,
    /// Heuristic-minus-trivial difference against occupancy, one line per `n`.
    Scaling,
}

impl FromStr for PlotKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bars" => Ok(PlotKind::Bars),
            "sequence" => Ok(PlotKind::Sequence),
            "scaling" => Ok(PlotKind::Scaling),
            other => Err(format!(
                "unknown plot kind `{other}` (bars, sequence, scaling)"
            )),
        }
    }
}

const SIZE: (u32, u32) = (900, 560);
const LINE_PALETTE: [RGBColor; 6] = [BLUE, RED, GREEN, MAGENTA, CYAN, BLACK];

fn mapper_color(kind: MapperKind) -> RGBColor {
    match kind {
        MapperKind::BruteForce => RED,
        MapperKind::Heuristic => BLUE,
        MapperKind::Trivial => GREEN,
    }
}

fn plot_err<E: std::fmt::Debug>(e: E) -> ExperimentError {
    ExperimentError::Plot(format!("{e:?}"))
}

/// Values in first-seen order without repeats.
fn distinct<T: PartialEq + Clone>(items: impl Iterator<Item = T>) -> Vec<T> {
    let mut out: Vec<T> = Vec::new();
    for x in items {
        if !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

/// Renders SVG charts of `kind` into `dir` and returns the written paths.
pub fn emit_plots(
    rows: &[SummaryRow],
    kind: PlotKind,
    dir: &Path,
) -> Result<Vec<PathBuf>, ExperimentError> {
    if rows.is_empty() {
        return Err(ExperimentError::EmptySummary);
    }
    std::fs::create_dir_all(dir)?;
    let written = match kind {
        PlotKind::Bars => bars(rows, dir)?,
        PlotKind::Sequence => sequences(rows, dir)?,
        PlotKind::Scaling => scaling(rows, dir)?,
    };
    if written.is_empty() {
        return Err(ExperimentError::Plot(format!(
            "no rows in the summary fit a {kind:?} chart"
        )));
    }
    Ok(written)
}

fn bars(rows: &[SummaryRow], dir: &Path) -> Result<Vec<PathBuf>, ExperimentError> {
    let mut written = Vec::new();
    for n in distinct(rows.iter().map(|r| r.n)) {
        let at_n: Vec<&SummaryRow> = rows.iter().filter(|r| r.n == n).collect();
        let groups = distinct(
            at_n.iter()
                .map(|r| (r.benchmark.clone(), r.family_params.clone())),
        );
        let mappers = {
            let mut m = distinct(at_n.iter().map(|r| r.mapper));
            m.sort_unstable();
            m
        };
        let names: Vec<String> = groups.iter().map(|(b, _)| b.clone()).collect();
        let path = dir.join(format!("bars_n{n}.svg"));
        {
            let root = SVGBackend::new(&path, SIZE).into_drawing_area();
            root.fill(&WHITE).map_err(plot_err)?;
            let g = groups.len() as f64;
            let mut chart = ChartBuilder::on(&root)
                .caption(
                    format!("Mean success rate on a {n}x{n} lattice"),
                    ("sans-serif", 22),
                )
                .margin(12)
                .x_label_area_size(40)
                .y_label_area_size(56)
                .build_cartesian_2d(-0.5..g - 0.5, 0.0..1.25)
                .map_err(plot_err)?;
            chart
                .configure_mesh()
                .disable_x_mesh()
                .x_labels(groups.len())
                .x_label_formatter(&|x| {
                    let i = x.round();
                    if (x - i).abs() < 1e-6 && i >= 0.0 {
                        names.get(i as usize).cloned().unwrap_or_default()
                    } else {
                        String::new()
                    }
                })
                .y_desc("mean sigma_total")
                .draw()
                .map_err(plot_err)?;

            let width = 0.8 / mappers.len() as f64;
            for (j, &mapper) in mappers.iter().enumerate() {
                let color = mapper_color(mapper);
                let bars: Vec<_> = groups
                    .iter()
                    .enumerate()
                    .filter_map(|(i, (b, p))| {
                        let row = at_n.iter().find(|r| {
                            &r.benchmark == b && &r.family_params == p && r.mapper == mapper
                        })?;
                        let y = row.mean_sigma_total?;
                        let x0 = i as f64 - 0.4 + j as f64 * width;
                        Some(Rectangle::new(
                            [(x0, 0.0), (x0 + width * 0.9, y)],
                            color.filled(),
                        ))
                    })
                    .collect();
                chart
                    .draw_series(bars)
                    .map_err(plot_err)?
                    .label(mapper.as_str())
                    .legend(move |(x, y)| {
                        Rectangle::new([(x, y - 5), (x + 12, y + 5)], color.filled())
                    });
            }
            // The band above 1.0 holds the legend clear of the bars.
            chart
                .configure_series_labels()
                .position(SeriesLabelPosition::UpperRight)
                .background_style(WHITE.mix(0.8))
                .border_style(BLACK)
                .draw()
                .map_err(plot_err)?;
            root.present().map_err(plot_err)?;
        }
        written.push(path);
    }
    Ok(written)
}

fn sequences(rows: &[SummaryRow], dir: &Path) -> Result<Vec<PathBuf>, ExperimentError> {
    let mut written = Vec::new();
    let keyed: Vec<(&SummaryRow, usize, usize)> = rows
        .iter()
        .filter_map(|r| {
            Some((
                r,
                param_value(&r.family_params, "s")?,
                param_value(&r.family_params, "k")?,
            ))
        })
        .collect();
    for (benchmark, s, n) in distinct(keyed.iter().map(|(r, s, _)| (r.benchmark.clone(), *s, r.n)))
    {
        let series: Vec<&(&SummaryRow, usize, usize)> = keyed
            .iter()
            .filter(|(r, rs, _)| r.benchmark == benchmark && *rs == s && r.n == n)
            .collect();
        let k_max = series.iter().map(|(_, _, k)| *k).max().unwrap_or(0).max(1);
        let path = dir.join(format!("sequence_{benchmark}_s{s}_n{n}.svg"));
        {
            let root = SVGBackend::new(&path, SIZE).into_drawing_area();
            root.fill(&WHITE).map_err(plot_err)?;
            let mut chart = ChartBuilder::on(&root)
                .caption(
                    format!("{benchmark}, s = {s}, {n}x{n} lattice"),
                    ("sans-serif", 22),
                )
                .margin(12)
                .x_label_area_size(40)
                .y_label_area_size(56)
                .build_cartesian_2d(0.0..k_max as f64, 0.0..1.05)
                .map_err(plot_err)?;
            chart
                .configure_mesh()
                .x_desc("nonlinear edges k")
                .y_desc("mean sigma_total")
                .draw()
                .map_err(plot_err)?;
            let mut mappers = distinct(series.iter().map(|(r, _, _)| r.mapper));
            mappers.sort_unstable();
            for mapper in mappers {
                let color = mapper_color(mapper);
                let mut pts: Vec<(f64, f64)> = series
                    .iter()
                    .filter(|(r, _, _)| r.mapper == mapper)
                    .filter_map(|(r, _, k)| Some((*k as f64, r.mean_sigma_total?)))
                    .collect();
                pts.sort_by(|a, b| a.0.total_cmp(&b.0));
                chart
                    .draw_series(LineSeries::new(pts.clone(), color.stroke_width(2)))
                    .map_err(plot_err)?
                    .label(mapper.as_str())
                    .legend(move |(x, y)| {
                        PathElement::new(vec![(x, y), (x + 16, y)], color.stroke_width(2))
                    });
                chart
                    .draw_series(pts.into_iter().map(|p| Circle::new(p, 3, color.filled())))
                    .map_err(plot_err)?;
            }
            chart
                .configure_series_labels()
                .background_style(WHITE.mix(0.8))
                .border_style(BLACK)
                .draw()
                .map_err(plot_err)?;
            root.present().map_err(plot_err)?;
        }
        written.push(path);
    }
    Ok(written)
}

fn scaling(rows: &[SummaryRow], dir: &Path) -> Result<Vec<PathBuf>, ExperimentError> {
    // sigma_diff is repeated on every mapper row of a point; take the
    // heuristic row as the representative.
    let diffs: Vec<(usize, f64, f64)> = rows
        .iter()
        .filter(|r| r.mapper == MapperKind::Heuristic)
        .filter_map(|r| Some((r.n, 100.0 * r.occupancy, r.sigma_diff?)))
        .collect();
    if diffs.is_empty() {
        return Ok(Vec::new());
    }
    let (lo, hi) = diffs.iter().fold((0.0f64, 0.0f64), |(lo, hi), &(_, _, d)| {
        (lo.min(d), hi.max(d))
    });
    let pad = ((hi - lo) * 0.08).max(1e-3);
    let path = dir.join("scaling.svg");
    {
        let root = SVGBackend::new(&path, SIZE).into_drawing_area();
        root.fill(&WHITE).map_err(plot_err)?;
        let mut chart = ChartBuilder::on(&root)
            .caption(
                "Heuristic minus trivial mean success rate",
                ("sans-serif", 22),
            )
            .margin(12)
            .x_label_area_size(40)
            .y_label_area_size(64)
            .build_cartesian_2d(0.0..100.0, (lo - pad)..(hi + pad))
            .map_err(plot_err)?;
        chart
            .configure_mesh()
            .x_desc("occupancy (%)")
            .y_desc("sigma_diff")
            .draw()
            .map_err(plot_err)?;
        chart
            .draw_series(LineSeries::new([(0.0, 0.0), (100.0, 0.0)], BLACK.mix(0.4)))
            .map_err(plot_err)?;
        for (i, n) in distinct(diffs.iter().map(|d| d.0)).into_iter().enumerate() {
            let color = LINE_PALETTE[i % LINE_PALETTE.len()];
            let mut pts: Vec<(f64, f64)> = diffs
                .iter()
                .filter(|d| d.0 == n)
                .map(|d| (d.1, d.2))
                .collect();
            pts.sort_by(|a, b| a.0.total_cmp(&b.0));
            chart
                .draw_series(LineSeries::new(pts, color.stroke_width(2)))
                .map_err(plot_err)?
                .label(format!("n = {n}"))
                .legend(move |(x, y)| {
                    PathElement::new(vec![(x, y), (x + 16, y)], color.stroke_width(2))
                });
        }
        chart
            .configure_series_labels()
            .background_style(WHITE.mix(0.8))
            .border_style(BLACK)
            .draw()
            .map_err(plot_err)?;
        root.present().map_err(plot_err)?;
    }
    Ok(vec![path])
}
