use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::ExperimentError;
use crate::benchgen::{
    canonical_name, max_nonlinear_edges, BenchmarkSpec, Family, REALISTIC_NAMES,
};
use crate::lattice::{NoiseSpec, Numbering};
use crate::mappers::{MapperKind, DEFAULT_PLACEMENT_LIMIT};

/// A single value or a list of values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T> OneOrMany<T> {
    pub fn as_slice(&self) -> &[T] {
        match self {
            OneOrMany::One(x) => std::slice::from_ref(x),
            OneOrMany::Many(xs) => xs,
        }
    }
}

/// Integer sweep: a value, an explicit list, an inclusive range, or the
/// keyword `"all"` (alias `"fill"`), whose meaning depends on the parameter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Sweep {
    Value(usize),
    List(Vec<usize>),
    Range { from: usize, to: usize },
    Keyword(String),
}

impl Sweep {
    /// Expands the sweep; `all` becomes `all_from ..= all_to`.
    pub fn expand(
        &self,
        what: &str,
        all_from: usize,
        all_to: usize,
    ) -> Result<Vec<usize>, ExperimentError> {
        let values = match self {
            Sweep::Value(v) => vec![*v],
            Sweep::List(vs) => vs.clone(),
            Sweep::Range { from, to } => (*from..=*to).collect(),
            Sweep::Keyword(k) if k == "all" || k == "fill" => (all_from..=all_to).collect(),
            Sweep::Keyword(k) => {
                return Err(ExperimentError::Config(format!(
                    "`{what}`: unknown keyword `{k}` (expected \"all\")"
                )))
            }
        };
        if values.is_empty() {
            return Err(ExperimentError::Config(format!(
                "`{what}` selects no values"
            )));
        }
        Ok(values)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    Realistic,
    SequenceI,
    SequenceIi,
    Linear,
}

/// Realistic benchmark selection: one name, a list, or `"all"`.
pub type Names = OneOrMany<String>;

/// One `[[benchmark]]` table. Which parameters are required depends on
/// `family`: `name` for realistic, `s` and `k` for the sequences, `r` for
/// linear. `k = "all"` means `0 ..= C(s,2) - (s-1)`, `r = "all"` means
/// `1 ..= n*n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchmarkEntry {
    pub family: FamilyKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<Names>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<Sweep>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<Sweep>,
    #[serde(default = "one")]
    pub depth_multiplier: u32,
}

fn one() -> u32 {
    1
}

fn all_mappers() -> Vec<MapperKind> {
    MapperKind::ALL.to_vec()
}

fn default_output() -> PathBuf {
    PathBuf::from("results")
}

fn default_limit() -> u64 {
    DEFAULT_PLACEMENT_LIMIT
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub benchmark: OneOrMany<BenchmarkEntry>,
    pub lattice_n: Sweep,
    /// Sampling ranges and scaling; its `seed` is replaced per trial.
    #[serde(default)]
    pub noise: NoiseSpec,
    /// Lattice vertex numbering, which is what the trivial mapper follows.
    #[serde(default)]
    pub numbering: Numbering,
    pub trials: usize,
    #[serde(default = "all_mappers")]
    pub mappers: Vec<MapperKind>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_output")]
    pub output: PathBuf,
    /// Fill `elapsed_ms`. Timings vary run to run, so this breaks
    /// byte-identical output.
    #[serde(default)]
    pub timing: bool,
    /// Worker threads; 0 uses every available core.
    #[serde(default)]
    pub threads: usize,
    #[serde(default)]
    pub include_measurement: bool,
    #[serde(default = "default_limit")]
    pub placement_limit: u64,
}

/// One benchmark instance on one lattice size.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    pub spec: BenchmarkSpec,
    pub n: usize,
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self, ExperimentError> {
        let cfg: ExperimentConfig = toml::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Reads a config file; a relative `output` is resolved against the
    /// file's directory.
    pub fn load(path: &Path) -> Result<Self, ExperimentError> {
        let mut cfg = Self::from_toml(&std::fs::read_to_string(path)?)?;
        if cfg.output.is_relative() {
            if let Some(dir) = path.parent() {
                cfg.output = dir.join(&cfg.output);
            }
        }
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        if self.trials == 0 {
            return Err(ExperimentError::Config("`trials` must be positive".into()));
        }
        if self.mappers.is_empty() {
            return Err(ExperimentError::Config("`mappers` is empty".into()));
        }
        if self.benchmark.as_slice().is_empty() {
            return Err(ExperimentError::Config("no `benchmark` given".into()));
        }
        self.noise
            .validate()
            .map_err(|e| ExperimentError::Config(format!("`noise`: {e}")))?;
        self.points().map(|_| ())
    }

    /// Mappers in canonical order without repeats.
    pub fn mapper_order(&self) -> Vec<MapperKind> {
        let mut m = self.mappers.clone();
        m.sort_unstable();
        m.dedup();
        m
    }

    pub fn lattice_sizes(&self) -> Result<Vec<usize>, ExperimentError> {
        if matches!(self.lattice_n, Sweep::Keyword(_)) {
            return Err(ExperimentError::Config(
                "`lattice_n` needs explicit sizes".into(),
            ));
        }
        let ns = self.lattice_n.expand("lattice_n", 1, 1)?;
        if ns.contains(&0) {
            return Err(ExperimentError::Config(
                "`lattice_n` must be positive".into(),
            ));
        }
        Ok(ns)
    }

    /// Benchmark points in run order: benchmark entry, then lattice size,
    /// then the swept parameter ascending as listed.
    pub fn points(&self) -> Result<Vec<Point>, ExperimentError> {
        let ns = self.lattice_sizes()?;
        let mut points = Vec::new();
        for entry in self.benchmark.as_slice() {
            for &n in &ns {
                for family in entry.families(n)? {
                    let spec = BenchmarkSpec::new(family).with_depth(entry.depth_multiplier);
                    spec.validate()
                        .map_err(|e| ExperimentError::Config(e.to_string()))?;
                    points.push(Point { spec, n });
                }
            }
        }
        Ok(points)
    }
}

impl BenchmarkEntry {
    fn require<'a, T>(&self, field: &'a Option<T>, name: &str) -> Result<&'a T, ExperimentError> {
        field.as_ref().ok_or_else(|| {
            ExperimentError::Config(format!("benchmark family {:?} needs `{name}`", self.family))
        })
    }

    fn reject(&self, present: bool, name: &str) -> Result<(), ExperimentError> {
        if present {
            return Err(ExperimentError::Config(format!(
                "benchmark family {:?} does not take `{name}`",
                self.family
            )));
        }
        Ok(())
    }

    /// Concrete families for lattice side `n`.
    pub fn families(&self, n: usize) -> Result<Vec<Family>, ExperimentError> {
        match self.family {
            FamilyKind::Realistic => {
                self.reject(
                    self.s.is_some() || self.k.is_some() || self.r.is_some(),
                    "s/k/r",
                )?;
                let names = self.require(&self.name, "name")?.as_slice();
                let mut out = Vec::new();
                for name in names {
                    if name.eq_ignore_ascii_case("all") {
                        out.extend(REALISTIC_NAMES.iter().map(|n| Family::Realistic {
                            name: n.to_string(),
                        }));
                    } else {
                        let canonical = canonical_name(name).ok_or_else(|| {
                            ExperimentError::Config(format!("unknown realistic benchmark `{name}`"))
                        })?;
                        out.push(Family::Realistic {
                            name: canonical.to_string(),
                        });
                    }
                }
                Ok(out)
            }
            FamilyKind::SequenceI | FamilyKind::SequenceIi => {
                self.reject(self.name.is_some() || self.r.is_some(), "name/r")?;
                let s = *self.require(&self.s, "s")?;
                if s < 4 {
                    return Err(ExperimentError::Config(format!(
                        "sequences need s >= 4, got {s}"
                    )));
                }
                let ks = self
                    .require(&self.k, "k")?
                    .expand("k", 0, max_nonlinear_edges(s))?;
                Ok(ks
                    .into_iter()
                    .map(|k| match self.family {
                        FamilyKind::SequenceI => Family::SequenceI { s, k },
                        _ => Family::SequenceII { s, k },
                    })
                    .collect())
            }
            FamilyKind::Linear => {
                self.reject(
                    self.name.is_some() || self.s.is_some() || self.k.is_some(),
                    "name/s/k",
                )?;
                let rs = self.require(&self.r, "r")?.expand("r", 1, n * n)?;
                Ok(rs.into_iter().map(|r| Family::Linear { r }).collect())
            }
        }
    }
}
