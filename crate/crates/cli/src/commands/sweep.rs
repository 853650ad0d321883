//! `sweep`: rank parameter settings of one algorithm across problems.
//!
//! Every (alpha schedule, beta) cell is run on every problem; settings are
//! ranked per problem by mean final best, ranks are summed across problems,
//! and settings are reported in ascending summed-rank order.

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use rdpso_core::{AlgorithmSpec64, Problem64};

use crate::config::{Settings, SWEEP_CELL_SEED_STRIDE};
use crate::output::{write_csv, RawRow};

#[derive(Debug, Clone)]
pub struct SweepSetting {
    pub alpha_start: f64,
    pub alpha_end: f64,
    pub beta: f64,
}

impl SweepSetting {
    pub fn id(&self) -> String {
        if self.alpha_start == self.alpha_end {
            format!("a{}_b{}", self.alpha_start, self.beta)
        } else {
            format!("a{}:{}_b{}", self.alpha_start, self.alpha_end, self.beta)
        }
    }
}

pub struct SweepOutcome {
    /// (setting, per-problem means, rank sum), sorted by ascending rank sum.
    pub ranked: Vec<(SweepSetting, Vec<f64>, usize)>,
}

pub fn execute(
    algorithm: &str,
    alpha_settings: &[(f64, Option<f64>)],
    betas: &[f64],
    problems: &[Problem64],
    settings: &Settings,
) -> Result<SweepOutcome> {
    if alpha_settings.is_empty() || betas.is_empty() {
        bail!("sweep grids must be non-empty");
    }
    let cells: Vec<SweepSetting> = alpha_settings
        .iter()
        .flat_map(|&(start, end)| {
            betas.iter().map(move |&beta| SweepSetting {
                alpha_start: start,
                alpha_end: end.unwrap_or(start),
                beta,
            })
        })
        .collect();

    // resolve one spec per cell up front so bad algorithm/parameter
    // combinations fail before any run starts
    let specs: Vec<AlgorithmSpec64> = cells
        .iter()
        .map(|cell| {
            let mut spec = AlgorithmSpec64::by_name(algorithm)?;
            if cell.alpha_start == cell.alpha_end {
                spec.apply_param("alpha", cell.alpha_start)?;
            } else {
                spec.apply_param("alpha_start", cell.alpha_start)?;
                spec.apply_param("alpha_end", cell.alpha_end)?;
            }
            spec.apply_param("beta", cell.beta)?;
            spec.set_budget(settings.particles, settings.iterations);
            Ok(spec)
        })
        .collect::<rdpso_core::Result<_>>()
        .context("sweep parameters")?;

    let tasks: Vec<(usize, usize, usize)> = (0..cells.len())
        .flat_map(|ci| {
            (0..problems.len()).flat_map(move |pi| (0..settings.runs).map(move |r| (ci, pi, r)))
        })
        .collect();
    let results: Vec<_> = tasks
        .par_iter()
        .map(|&(ci, pi, run)| {
            let seed = settings
                .base_seed
                .wrapping_add((ci as u64).wrapping_mul(SWEEP_CELL_SEED_STRIDE))
                .wrapping_add(run as u64);
            let record = specs[ci].run(&problems[pi], seed)?;
            Ok(((ci, pi, run), seed, record))
        })
        .collect::<Result<Vec<_>, rdpso_core::Error>>()?;

    // raw per-run rows, with the setting id recorded in the algorithm column
    let raw_rows: Vec<String> = results
        .iter()
        .map(|((ci, pi, run), seed, record)| {
            RawRow {
                algorithm: format!("{algorithm}[{}]", cells[*ci].id()),
                problem: problems[*pi].name().to_string(),
                run: *run,
                seed: *seed,
                final_best: record.final_best,
                wall_ms: record.wall_ms,
            }
            .to_csv()
        })
        .collect();
    write_csv(
        &settings.output_dir.join("sweep_raw.csv"),
        crate::output::RAW_HEADER,
        &raw_rows,
    )?;

    // mean final best per (cell, problem)
    let mut means = vec![vec![0.0_f64; problems.len()]; cells.len()];
    for ((ci, pi, _), _, record) in &results {
        means[*ci][*pi] += record.final_best / settings.runs as f64;
    }

    // per-problem competition ranks of the cells, by mean ascending
    let mut rank_sums = vec![0usize; cells.len()];
    for pi in 0..problems.len() {
        let mut order: Vec<usize> = (0..cells.len()).collect();
        order.sort_by(|&a, &b| means[a][pi].total_cmp(&means[b][pi]));
        let mut k = 0;
        while k < order.len() {
            let mut tie_end = k + 1;
            while tie_end < order.len()
                && means[order[tie_end]][pi] == means[order[k]][pi]
            {
                tie_end += 1;
            }
            for &cell in &order[k..tie_end] {
                rank_sums[cell] += k + 1;
            }
            k = tie_end;
        }
    }

    let mut ranked: Vec<(SweepSetting, Vec<f64>, usize)> = cells
        .into_iter()
        .enumerate()
        .map(|(ci, cell)| (cell, means[ci].clone(), rank_sums[ci]))
        .collect();
    ranked.sort_by(|a, b| a.2.cmp(&b.2).then(a.0.id().cmp(&b.0.id())));

    let mut header = String::from("alpha_start,alpha_end,beta,rank_sum,avg_rank");
    for problem in problems {
        header.push_str(&format!(",mean_{}", problem.name()));
    }
    let rows: Vec<String> = ranked
        .iter()
        .map(|(cell, means, rank_sum)| {
            let mut row = format!(
                "{},{},{},{},{}",
                cell.alpha_start,
                cell.alpha_end,
                cell.beta,
                rank_sum,
                *rank_sum as f64 / problems.len() as f64
            );
            for mean in means {
                row.push_str(&format!(",{mean}"));
            }
            row
        })
        .collect();
    write_csv(&settings.output_dir.join("sweep.csv"), &header, &rows)?;
    Ok(SweepOutcome { ranked })
}

pub fn print_summary(outcome: &SweepOutcome) {
    println!("settings by summed rank (best first):");
    for (cell, _, rank_sum) in &outcome.ranked {
        println!("  {:<24} rank_sum {}", cell.id(), rank_sum);
    }
}
