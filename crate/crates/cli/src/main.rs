use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use qmap_core::experiment::{
    curve, detect_critical_point, emit_plots, param_value, read_summary_csv, run_experiment,
    ExperimentConfig, PlotKind, SummaryRow,
};
use qmap_core::{
    coupling_from_json, gen_linear, interaction_from_json, interaction_graph, interaction_to_json,
    make_lattice_numbered, parse_circuit, run_mapper, BenchmarkSpec, CouplingGraph, Family,
    InteractionGraph, MapperKind, MapperResult, MetricOptions, NoiseSpec, Numbering,
};
use serde_json::json;

#[derive(Parser)]
#[command(name = "qmap", version, about = "Noise-aware initial qubit mapping")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Map one circuit onto a device and print the placement and its score.
    Map(MapArgs),
    /// Benchmark circuits.
    Bench {
        #[command(subcommand)]
        command: BenchCommand,
    },
    /// Monte-Carlo experiments.
    Experiment {
        #[command(subcommand)]
        command: ExperimentCommand,
    },
    /// Named demonstrations.
    Recipe {
        #[command(subcommand)]
        command: RecipeCommand,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MapperArg {
    Heuristic,
    Brute,
    Trivial,
}

impl From<MapperArg> for MapperKind {
    fn from(m: MapperArg) -> Self {
        match m {
            MapperArg::Heuristic => MapperKind::Heuristic,
            MapperArg::Brute => MapperKind::BruteForce,
            MapperArg::Trivial => MapperKind::Trivial,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum NumberingArg {
    RowMajor,
    Serpentine,
}

impl From<NumberingArg> for Numbering {
    fn from(n: NumberingArg) -> Self {
        match n {
            NumberingArg::RowMajor => Numbering::RowMajor,
            NumberingArg::Serpentine => Numbering::Serpentine,
        }
    }
}

#[derive(Args)]
struct MapArgs {
    /// cQASM-lite circuit, or an interaction graph if the name ends in `.json`.
    #[arg(long)]
    circuit: PathBuf,
    /// Side of a square lattice with sampled noise.
    #[arg(
        long,
        conflicts_with = "coupling",
        required_unless_present = "coupling"
    )]
    lattice: Option<usize>,
    /// Coupling graph in the JSON interchange format.
    #[arg(long)]
    coupling: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "heuristic")]
    mapper: MapperArg,
    /// Noise sampling seed for `--lattice`.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "row-major")]
    numbering: NumberingArg,
    /// Multiply the measurement factor into sigma_s.
    #[arg(long)]
    include_measurement: bool,
}

#[derive(Subcommand)]
enum BenchCommand {
    /// Print a benchmark interaction graph as interchange JSON.
    Gen(GenArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Realistic,
    #[value(alias = "sequence_i")]
    SequenceI,
    #[value(alias = "sequence_ii")]
    SequenceIi,
    Linear,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Realistic benchmark name.
    #[arg(long)]
    name: Option<String>,
    /// Qubit count of a sequence benchmark.
    #[arg(long)]
    s: Option<usize>,
    /// Number of nonlinear edges of a sequence benchmark.
    #[arg(long)]
    k: Option<usize>,
    /// Qubit count of a linear benchmark.
    #[arg(long)]
    r: Option<usize>,
    #[arg(long = "depth-mult", default_value_t = 1)]
    depth_multiplier: u32,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ExperimentCommand {
    /// Run a TOML experiment config and write trials.csv and summary.csv.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Overrides the config's `output` directory.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Overrides the config's `threads` (0 = all cores).
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Render SVG charts from a summary.csv.
    Plot {
        #[arg(long)]
        summary: PathBuf,
        #[arg(long)]
        kind: String,
        /// Output directory; defaults to the summary's directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum RecipeCommand {
    /// A 15-qubit path on a 5x5 lattice, showing where the greedy placement
    /// gets stuck next to the trivial placement.
    CornerTrap {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value = "serpentine")]
        numbering: NumberingArg,
    },
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Map(args) => map(args),
        Command::Bench {
            command: BenchCommand::Gen(args),
        } => bench_gen(args),
        Command::Experiment { command } => match command {
            ExperimentCommand::Run {
                config,
                output,
                threads,
            } => experiment_run(&config, output, threads),
            ExperimentCommand::Plot { summary, kind, out } => experiment_plot(&summary, &kind, out),
        },
        Command::Recipe {
            command: RecipeCommand::CornerTrap { seed, numbering },
        } => corner_trap(seed, numbering.into()),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_circuit(path: &Path) -> Result<InteractionGraph> {
    let text = read(path)?;
    if path.extension().is_some_and(|e| e == "json") {
        Ok(interaction_from_json(&text)?)
    } else {
        Ok(interaction_graph(&parse_circuit(&text)?))
    }
}

fn map(args: MapArgs) -> Result<()> {
    let g = load_circuit(&args.circuit)?;
    let device: CouplingGraph = match (&args.coupling, args.lattice) {
        (Some(path), _) => coupling_from_json(&read(path)?)?,
        (None, Some(n)) => make_lattice_numbered(
            n,
            &NoiseSpec::default().with_seed(args.seed),
            args.numbering.into(),
        )?,
        (None, None) => bail!("either --lattice or --coupling is required"),
    };
    let opts = MetricOptions {
        include_measurement: args.include_measurement,
    };
    let result = run_mapper(args.mapper.into(), &g, &device, opts)?;
    let out = json!({
        "mapper": result.mapper,
        "assign": result.mapping.assign,
        "swap_edges": result.report.swap_edge_count(),
        "report": result.report,
        "elapsed_ms": result.elapsed.as_secs_f64() * 1e3,
    });
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(())
}

fn bench_gen(args: GenArgs) -> Result<()> {
    let need = |v: Option<usize>, flag: &str| {
        v.with_context(|| format!("--{flag} is required for this family"))
    };
    let family = match args.family {
        FamilyArg::Realistic => Family::Realistic {
            name: args
                .name
                .context("--name is required for realistic benchmarks")?,
        },
        FamilyArg::SequenceI => Family::SequenceI {
            s: need(args.s, "s")?,
            k: need(args.k, "k")?,
        },
        FamilyArg::SequenceIi => Family::SequenceII {
            s: need(args.s, "s")?,
            k: need(args.k, "k")?,
        },
        FamilyArg::Linear => Family::Linear {
            r: need(args.r, "r")?,
        },
    };
    let spec = BenchmarkSpec::new(family).with_depth(args.depth_multiplier);
    let text = interaction_to_json(&spec.generate()?, Some(&spec.to_string()));
    match args.out {
        Some(path) => {
            fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => println!("{text}"),
    }
    Ok(())
}

fn experiment_run(config: &Path, output: Option<PathBuf>, threads: Option<usize>) -> Result<()> {
    let mut cfg = ExperimentConfig::load(config)?;
    if let Some(dir) = output {
        cfg.output = dir;
    }
    if let Some(t) = threads {
        cfg.threads = t;
    }
    let out = run_experiment(&cfg)?;
    out.write_to(&cfg.output)?;
    let failed = out.records.iter().filter(|r| !r.is_ok()).count();
    println!(
        "{} points, {} rows ({failed} failed) -> {}",
        out.points.len(),
        out.records.len(),
        cfg.output.display()
    );
    report_critical_points(&out.summary);
    Ok(())
}

/// Prints the critical point of every sequence sweep that has both the
/// heuristic and trivial means.
fn report_critical_points(rows: &[SummaryRow]) {
    let mut sweeps: Vec<(String, usize, usize)> = rows
        .iter()
        .filter(|r| r.benchmark.starts_with("sequence"))
        .filter_map(|r| {
            Some((
                r.benchmark.clone(),
                param_value(&r.family_params, "s")?,
                r.n,
            ))
        })
        .collect();
    sweeps.dedup();
    for (bench, s, n) in sweeps {
        let subset: Vec<SummaryRow> = rows
            .iter()
            .filter(|r| param_value(&r.family_params, "s") == Some(s))
            .cloned()
            .collect();
        if let Ok(k) = detect_critical_point(&curve(&subset, &bench, n, "k")) {
            let shown = k.map_or("none".to_string(), |k| k.to_string());
            println!("critical point {bench} s={s} n={n}: {shown}");
        }
    }
}

fn experiment_plot(summary: &Path, kind: &str, out: Option<PathBuf>) -> Result<()> {
    let kind: PlotKind = kind.parse().map_err(anyhow::Error::msg)?;
    let rows = read_summary_csv(
        fs::File::open(summary).with_context(|| format!("opening {}", summary.display()))?,
    )?;
    let dir = out.unwrap_or_else(|| summary.parent().map(Path::to_path_buf).unwrap_or_default());
    for file in emit_plots(&rows, kind, &dir)? {
        println!("{}", file.display());
    }
    Ok(())
}

fn render_grid(device: &CouplingGraph, n: usize, result: &MapperResult) -> String {
    let layout = device.layout().expect("lattices carry a layout");
    let mut cells = vec![vec![" .".to_string(); n]; n];
    for (v, &p) in result.mapping.assign.iter().enumerate() {
        let (row, col) = layout[p];
        cells[row][col] = format!("{v:2}");
    }
    cells
        .iter()
        .map(|r| r.join(" "))
        .collect::<Vec<_>>()
        .join("\n")
}

fn corner_trap(seed: u64, numbering: Numbering) -> Result<()> {
    const N: usize = 5;
    let g = gen_linear(15);
    let device = make_lattice_numbered(N, &NoiseSpec::default().with_seed(seed), numbering)?;
    println!("linear(15) on {N}x{N}, {numbering:?} numbering, noise seed {seed}");
    println!("cells show the circuit qubit placed there\n");
    for kind in [MapperKind::Heuristic, MapperKind::Trivial] {
        let r = run_mapper(kind, &g, &device, MetricOptions::default())?;
        println!(
            "{kind}: sigma_total {:.6}, swap edges {}",
            r.report.sigma_total,
            r.report.swap_edge_count()
        );
        println!("{}\n", render_grid(&device, N, &r));
    }
    Ok(())
}
