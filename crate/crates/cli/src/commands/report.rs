//! `report`: summarize raw run files into summary, pairwise-test, and rank
//! tables.

use std::collections::BTreeMap;
use std::path::PathBuf;

use anyhow::{bail, Result};
use rdpso_core::stats::{rank_problem, ProblemRanking, RankTable, ResultSample};
use rdpso_core::Error;

use crate::config::Settings;
use crate::output::{read_raw_files, write_csv};

pub fn execute(files: &[PathBuf], settings: &Settings) -> Result<()> {
    let mut rows = read_raw_files(files)?;
    if rows.is_empty() {
        bail!("no result rows found in the given files");
    }
    // canonical order makes the outputs independent of input row order
    rows.sort_by(|a, b| {
        (&a.algorithm, &a.problem, a.run).cmp(&(&b.algorithm, &b.problem, b.run))
    });

    let mut algorithms: Vec<String> = rows.iter().map(|r| r.algorithm.clone()).collect();
    algorithms.sort();
    algorithms.dedup();
    let mut problems: Vec<String> = rows.iter().map(|r| r.problem.clone()).collect();
    problems.sort();
    problems.dedup();

    let mut cells: BTreeMap<(String, String), Vec<f64>> = BTreeMap::new();
    for row in &rows {
        cells
            .entry((row.algorithm.clone(), row.problem.clone()))
            .or_default()
            .push(row.final_best);
    }
    let missing: Vec<String> = algorithms
        .iter()
        .flat_map(|a| problems.iter().map(move |p| (a, p)))
        .filter(|(a, p)| !cells.contains_key(&((*a).clone(), (*p).clone())))
        .map(|(a, p)| format!("{a}/{p}"))
        .collect();
    if !missing.is_empty() {
        return Err(Error::MissingCells(missing).into());
    }

    let mut rankings: Vec<ProblemRanking<f64>> = Vec::new();
    for problem in &problems {
        let samples: Vec<ResultSample<f64>> = algorithms
            .iter()
            .map(|algorithm| {
                ResultSample::new(
                    algorithm.clone(),
                    problem.clone(),
                    cells[&(algorithm.clone(), problem.clone())].clone(),
                )
            })
            .collect();
        rankings.push(rank_problem(&samples)?);
    }

    // summary.csv
    let mut summary_rows = Vec::new();
    for ranking in &rankings {
        for entry in &ranking.entries {
            summary_rows.push((
                entry.algorithm.clone(),
                ranking.problem.clone(),
                format!(
                    "{},{},{},{}",
                    entry.algorithm, ranking.problem, entry.mean, entry.std
                ),
            ));
        }
    }
    summary_rows.sort();
    write_csv(
        &settings.output_dir.join("summary.csv"),
        "algorithm,problem,mean,std",
        &summary_rows.into_iter().map(|(_, _, row)| row).collect::<Vec<_>>(),
    )?;

    // pairwise.csv: the adjacent-pair tests, in ascending-mean order per problem
    let pairwise_rows: Vec<String> = rankings
        .iter()
        .flat_map(|ranking| {
            ranking.adjacent_tests.iter().map(|t| {
                format!(
                    "{},{},{},{},{},{}",
                    ranking.problem, t.algo_a, t.algo_b, t.t, t.p, t.significant
                )
            })
        })
        .collect();
    write_csv(
        &settings.output_dir.join("pairwise.csv"),
        "problem,algo_a,algo_b,t,p,significant",
        &pairwise_rows,
    )?;

    // ranks.csv with one average row per algorithm
    let table = RankTable::from_rankings(&rankings);
    let averages = table.average_rank()?;
    let mut rank_rows: Vec<String> = table
        .per_problem_ranks
        .iter()
        .map(|((algorithm, problem), rank)| format!("{algorithm},{problem},{rank}"))
        .collect();
    for (algorithm, average) in &averages {
        rank_rows.push(format!("{algorithm},average,{average}"));
    }
    write_csv(
        &settings.output_dir.join("ranks.csv"),
        "algorithm,problem,rank",
        &rank_rows,
    )?;

    // human-readable table, best average rank first
    let mut order: Vec<(&String, &f64)> = averages.iter().collect();
    order.sort_by(|a, b| a.1.total_cmp(b.1).then(a.0.cmp(b.0)));
    println!("{:<24} {:>9}  per-problem ranks", "algorithm", "avg rank");
    for (algorithm, average) in order {
        let per_problem: Vec<String> = problems
            .iter()
            .map(|p| {
                table.per_problem_ranks[&(algorithm.clone(), p.clone())].to_string()
            })
            .collect();
        println!(
            "{algorithm:<24} {average:>9.2}  {}",
            per_problem.join(" ")
        );
    }
    Ok(())
}
