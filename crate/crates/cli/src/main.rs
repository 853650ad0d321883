//! Experiment driver for the swarm optimization library: benchmark
//! campaigns, parameter sweeps, single-particle dynamics studies, and
//! statistical reports, all reproducible from (config, seed).

mod commands;
mod config;
mod output;

use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use config::{load_config, resolve_algorithms, resolve_problems, resolve_settings, FileConfig, Overrides};
use output::{parse_alpha_settings, parse_value_grid};

#[derive(Parser)]
#[command(
    name = "rdpso",
    version,
    about = "Random drift particle swarm optimization experiment driver"
)]
struct Cli {
    /// Declarative experiment config (TOML); flags override its keys.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output directory (default: config, then $RDPSO_OUT_DIR, then ./results).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Base seed; run r uses seed base_seed + r.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Runs per algorithm/problem cell.
    #[arg(long, global = true)]
    runs: Option<usize>,

    /// Particles per swarm.
    #[arg(long, global = true)]
    particles: Option<usize>,

    /// Iterations per run.
    #[arg(long, global = true)]
    iterations: Option<usize>,

    /// Problem dimension.
    #[arg(long, global = true)]
    dim: Option<usize>,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a benchmark campaign and write raw.csv plus trajectory files.
    Run {
        /// Comma-separated algorithm names (see --help for the list).
        #[arg(long, value_delimiter = ',')]
        algos: Vec<String>,
        /// Comma-separated problem names, e.g. f1_sphere,f9_rastrigin.
        #[arg(long, value_delimiter = ',')]
        problems: Vec<String>,
    },
    /// Rank (alpha, beta) settings of one RDPSO variant across problems.
    Sweep {
        /// Algorithm to sweep (an rdpso-* variant).
        #[arg(long)]
        algo: String,
        #[arg(long, value_delimiter = ',')]
        problems: Vec<String>,
        /// Alpha settings: fixed values ("0.7") or linear "start:end" pairs.
        #[arg(long)]
        alphas: String,
        /// Beta values, comma separated.
        #[arg(long)]
        betas: String,
    },
    /// Classify single-particle stability on an (alpha, beta) grid.
    Dynamics {
        /// Grid values: comma list and/or "lo:hi:count" linspace entries.
        #[arg(long)]
        alphas: String,
        #[arg(long)]
        betas: String,
        #[arg(long, default_value_t = 5000)]
        steps: usize,
        #[arg(long, default_value_t = 20)]
        reps: usize,
        /// Also write one log-gap trajectory file per grid cell.
        #[arg(long)]
        trajectories: bool,
    },
    /// Summarize raw result files into summary/pairwise/rank tables.
    Report {
        /// raw.csv files produced by `run`.
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
}

fn main() -> Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("cannot configure worker pool")?;
    }
    let config = match &cli.config {
        Some(path) => load_config(path)?,
        None => FileConfig::default(),
    };
    let overrides = Overrides {
        runs: cli.runs,
        iterations: cli.iterations,
        particles: cli.particles,
        dim: cli.dim,
        seed: cli.seed,
        out: cli.out.clone(),
    };
    let settings = resolve_settings(&config, &overrides);

    match &cli.command {
        Command::Run { algos, problems } => {
            let algorithms = resolve_algorithms(algos, &config, &settings)?;
            let problems = resolve_problems(problems, &config, &settings)?;
            let outcome = commands::run::execute(&algorithms, &problems, &settings)?;
            commands::run::print_summary(&outcome, &settings.output_dir);
        }
        Command::Sweep {
            algo,
            problems,
            alphas,
            betas,
        } => {
            let alpha_settings = parse_alpha_settings(alphas)?;
            let beta_grid = parse_value_grid(betas)?;
            let problems = resolve_problems(problems, &config, &settings)?;
            let outcome =
                commands::sweep::execute(algo, &alpha_settings, &beta_grid, &problems, &settings)?;
            commands::sweep::print_summary(&outcome);
        }
        Command::Dynamics {
            alphas,
            betas,
            steps,
            reps,
            trajectories,
        } => {
            let alpha_grid = parse_value_grid(alphas)?;
            let beta_grid = parse_value_grid(betas)?;
            commands::dynamics::execute(
                &alpha_grid,
                &beta_grid,
                *steps,
                *reps,
                *trajectories,
                &settings,
            )?;
        }
        Command::Report { files } => {
            commands::report::execute(files, &settings)?;
        }
    }
    Ok(())
}
