//! `run`: execute a runs x algorithms x problems campaign.

use std::path::Path;

use anyhow::Result;
use rayon::prelude::*;
use rdpso_core::{AlgorithmSpec64, Problem64};

use crate::config::Settings;
use crate::output::{median, write_csv, RawRow, RAW_HEADER};

pub struct CampaignOutput {
    pub raw_rows: Vec<RawRow>,
}

/// Runs the full campaign with seeds `base_seed + run_index`, writes
/// `raw.csv` plus one per-iteration median trajectory file per
/// (algorithm, problem) pair.
pub fn execute(
    algorithms: &[(String, AlgorithmSpec64)],
    problems: &[Problem64],
    settings: &Settings,
) -> Result<CampaignOutput> {
    let tasks: Vec<(usize, usize, usize)> = (0..algorithms.len())
        .flat_map(|ai| {
            (0..problems.len()).flat_map(move |pi| (0..settings.runs).map(move |r| (ai, pi, r)))
        })
        .collect();
    let records: Vec<_> = tasks
        .par_iter()
        .map(|&(ai, pi, run)| {
            let seed = settings.base_seed.wrapping_add(run as u64);
            let record = algorithms[ai].1.run(&problems[pi], seed)?;
            Ok(((ai, pi, run), seed, record))
        })
        .collect::<Result<Vec<_>, rdpso_core::Error>>()?;

    let mut raw_rows = Vec::with_capacity(records.len());
    for ((ai, pi, run), seed, record) in &records {
        raw_rows.push(RawRow {
            algorithm: algorithms[*ai].0.clone(),
            problem: problems[*pi].name().to_string(),
            run: *run,
            seed: *seed,
            final_best: record.final_best,
            wall_ms: record.wall_ms,
        });
    }
    let csv_rows: Vec<String> = raw_rows.iter().map(RawRow::to_csv).collect();
    write_csv(&settings.output_dir.join("raw.csv"), RAW_HEADER, &csv_rows)?;

    for (ai, (name, _)) in algorithms.iter().enumerate() {
        for (pi, problem) in problems.iter().enumerate() {
            let trajectories: Vec<&Vec<f64>> = records
                .iter()
                .filter(|((a, p, _), _, _)| *a == ai && *p == pi)
                .map(|(_, _, record)| &record.best_per_iteration)
                .collect();
            let length = trajectories.iter().map(|t| t.len()).min().unwrap_or(0);
            let rows: Vec<String> = (0..length)
                .map(|iter| {
                    let at_iter: Vec<f64> = trajectories.iter().map(|t| t[iter]).collect();
                    format!("{iter},{}", median(&at_iter))
                })
                .collect();
            write_csv(
                &settings
                    .output_dir
                    .join(format!("traj_{name}__{}.csv", problem.name())),
                "iteration,median_best",
                &rows,
            )?;
        }
    }
    Ok(CampaignOutput { raw_rows })
}

pub fn print_summary(output: &CampaignOutput, out_dir: &Path) {
    let mut cells: Vec<(String, String)> = output
        .raw_rows
        .iter()
        .map(|r| (r.algorithm.clone(), r.problem.clone()))
        .collect();
    cells.sort();
    cells.dedup();
    println!("wrote {} runs to {}", output.raw_rows.len(), out_dir.display());
    for (algorithm, problem) in cells {
        let finals: Vec<f64> = output
            .raw_rows
            .iter()
            .filter(|r| r.algorithm == algorithm && r.problem == problem)
            .map(|r| r.final_best)
            .collect();
        let mean = finals.iter().sum::<f64>() / finals.len() as f64;
        println!(
            "  {algorithm} on {problem}: mean final best {mean:.6e} over {} runs",
            finals.len()
        );
    }
}
