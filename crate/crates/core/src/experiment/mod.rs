//! Monte-Carlo experiments: sweep benchmark points over lattice sizes, map
//! each point with every selected mapper on freshly sampled noise, and
//! aggregate the results into CSV tables and SVG charts.
//!
//! A configuration is a TOML document:
//!
//! ```toml
//! trials = 200
//! seed = 7
//! mappers = ["heuristic", "trivial"]
//! lattice_n = [4, 5, 6]          # or 3, or { from = 4, to = 6 }
//! output = "out/scaling"
//!
//! [noise]
//! two_range = [0.005, 0.05]
//!
//! [[benchmark]]
//! family = "linear"
//! r = "all"                      # 1 ..= n*n
//! ```
//!
//! Trial `t` samples its lattice from [`trial_seed`]`(seed, t)`. The same
//! trial seeds are used for every benchmark point, so points at equal `n`
//! are compared on identical devices.

mod config;
mod plot;
mod run;
mod summary;

use thiserror::Error;

pub use config::{BenchmarkEntry, ExperimentConfig, FamilyKind, Names, OneOrMany, Point, Sweep};
pub use plot::{emit_plots, PlotKind};
pub use run::{
    read_trials_csv, run_experiment, trial_seed, write_trials_csv, ExperimentOutput, RowStatus,
    TrialRecord,
};
pub use summary::{
    curve, detect_critical_point, param_value, read_summary_csv, summarize, write_summary_csv,
    CurvePoint, SummaryRow,
};

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("configuration syntax: {0}")]
    ConfigSyntax(#[from] toml::de::Error),
    #[error("summary has no `{0}` rows for this curve")]
    MissingMapper(&'static str),
    #[error("nothing to plot: the summary is empty")]
    EmptySummary,
    #[error("plot: {0}")]
    Plot(String),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}
