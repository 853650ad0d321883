//! Config-file parsing and plan resolution: command-line flags override
//! config keys, which override the built-in defaults.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use rdpso_core::objectives::load_problem_data;
use rdpso_core::{AlgorithmSpec64, Problem64};
use serde::Deserialize;

pub const DEFAULT_RUNS: usize = 20;
pub const DEFAULT_ITERATIONS: usize = 5000;
pub const DEFAULT_PARTICLES: usize = 40;
pub const DEFAULT_DIM: usize = 30;
pub const DEFAULT_SEED: u64 = 42;
pub const OUT_DIR_ENV: &str = "RDPSO_OUT_DIR";

/// Seed stride between parameter-sweep cells, keeping their run-seed ranges
/// disjoint.
pub const SWEEP_CELL_SEED_STRIDE: u64 = 1_000_000;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    #[serde(default)]
    pub experiment: ExperimentSection,
    #[serde(default)]
    pub algorithms: Vec<AlgorithmSection>,
    #[serde(default)]
    pub problems: Vec<ProblemSection>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSection {
    pub runs: Option<usize>,
    pub iterations: Option<usize>,
    pub particles: Option<usize>,
    pub dim: Option<usize>,
    pub base_seed: Option<u64>,
    pub output_dir: Option<PathBuf>,
}

/// `name` plus free-form numeric parameter keys (`alpha_start`, `beta`, ...).
#[derive(Debug, Deserialize)]
pub struct AlgorithmSection {
    pub name: String,
    #[serde(flatten)]
    pub params: BTreeMap<String, f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSection {
    pub name: String,
    pub dim: Option<usize>,
    /// Optional shift (+ rotation) data file overriding the generated ones.
    pub data: Option<PathBuf>,
    /// Optional seed for the generated shift/rotation.
    pub data_seed: Option<u64>,
}

pub fn load_config(path: &Path) -> Result<FileConfig> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read config {}", path.display()))?;
    toml::from_str(&text).with_context(|| format!("cannot parse config {}", path.display()))
}

/// Global experiment settings after flag/config/default resolution.
#[derive(Debug, Clone)]
pub struct Settings {
    pub runs: usize,
    pub iterations: usize,
    pub particles: usize,
    pub dim: usize,
    pub base_seed: u64,
    pub output_dir: PathBuf,
}

/// Command-line overrides (None = not given).
#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub runs: Option<usize>,
    pub iterations: Option<usize>,
    pub particles: Option<usize>,
    pub dim: Option<usize>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
}

pub fn resolve_settings(config: &FileConfig, overrides: &Overrides) -> Settings {
    let exp = &config.experiment;
    let output_dir = overrides
        .out
        .clone()
        .or_else(|| exp.output_dir.clone())
        .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("results"));
    Settings {
        runs: overrides.runs.or(exp.runs).unwrap_or(DEFAULT_RUNS),
        iterations: overrides
            .iterations
            .or(exp.iterations)
            .unwrap_or(DEFAULT_ITERATIONS),
        particles: overrides
            .particles
            .or(exp.particles)
            .unwrap_or(DEFAULT_PARTICLES),
        dim: overrides.dim.or(exp.dim).unwrap_or(DEFAULT_DIM),
        base_seed: overrides.seed.or(exp.base_seed).unwrap_or(DEFAULT_SEED),
        output_dir,
    }
}

/// Builds the named algorithms: flag names take precedence over the config's
/// algorithm list; config parameter keys apply only to config entries; the
/// global particle/iteration budget applies to all.
pub fn resolve_algorithms(
    flag_names: &[String],
    config: &FileConfig,
    settings: &Settings,
) -> Result<Vec<(String, AlgorithmSpec64)>> {
    let mut specs = Vec::new();
    if !flag_names.is_empty() {
        for name in flag_names {
            let spec = AlgorithmSpec64::by_name(name)?;
            specs.push((name.clone(), spec));
        }
    } else {
        for section in &config.algorithms {
            let mut spec = AlgorithmSpec64::by_name(&section.name)?;
            for (key, &value) in &section.params {
                spec.apply_param(key, value)
                    .with_context(|| format!("algorithm '{}'", section.name))?;
            }
            specs.push((section.name.clone(), spec));
        }
    }
    if specs.is_empty() {
        bail!("no algorithms selected; pass --algos or list [[algorithms]] in the config");
    }
    for (_, spec) in &mut specs {
        spec.set_budget(settings.particles, settings.iterations);
    }
    Ok(specs)
}

/// Builds the named problems, honoring per-problem dimension and data files.
pub fn resolve_problems(
    flag_names: &[String],
    config: &FileConfig,
    settings: &Settings,
) -> Result<Vec<Problem64>> {
    let mut problems = Vec::new();
    if !flag_names.is_empty() {
        for name in flag_names {
            problems.push(Problem64::named(name, settings.dim)?);
        }
    } else {
        for section in &config.problems {
            let dim = section.dim.unwrap_or(settings.dim);
            let mut problem = match section.data_seed {
                Some(seed) => Problem64::named_with_seed(&section.name, dim, seed)?,
                None => Problem64::named(&section.name, dim)?,
            };
            if let Some(data) = &section.data {
                let (shift, rotation) = load_problem_data::<f64>(data, dim)?;
                problem = problem.with_shift(shift)?;
                if let Some(rotation) = rotation {
                    problem = problem.with_rotation(rotation)?;
                }
            }
            problems.push(problem);
        }
    }
    if problems.is_empty() {
        bail!("no problems selected; pass --problems or list [[problems]] in the config");
    }
    Ok(problems)
}
