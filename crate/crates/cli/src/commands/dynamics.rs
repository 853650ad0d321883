//! `dynamics`: single-particle stability studies on an (alpha, beta) grid.

use anyhow::Result;
use rdpso_core::dynamics::{boundedness_map, simulate_particle, DynamicsConfig};

use crate::config::Settings;
use crate::output::write_csv;

pub const MAP_HEADER: &str = "alpha,beta,delta,delta_error,classification,diverged_fraction";

pub fn execute(
    alphas: &[f64],
    betas: &[f64],
    steps: usize,
    reps: usize,
    trajectories: bool,
    settings: &Settings,
) -> Result<()> {
    let cells = boundedness_map(alphas, betas, reps, steps, settings.base_seed)?;
    let rows: Vec<String> = cells
        .iter()
        .map(|c| {
            format!(
                "{},{},{},{},{},{}",
                c.alpha, c.beta, c.delta, c.delta_error, c.classification, c.diverged_fraction
            )
        })
        .collect();
    write_csv(
        &settings.output_dir.join("dynamics_map.csv"),
        MAP_HEADER,
        &rows,
    )?;
    println!(
        "wrote {} cells to {}",
        cells.len(),
        settings.output_dir.join("dynamics_map.csv").display()
    );
    for cell in &cells {
        println!(
            "  alpha={} beta={}: delta={:+.6} {} (diverged {}%)",
            cell.alpha,
            cell.beta,
            cell.delta,
            cell.classification,
            cell.diverged_fraction * 100.0
        );
    }

    if trajectories {
        for (ci, cell) in cells.iter().enumerate() {
            let cfg = DynamicsConfig {
                steps,
                ..DynamicsConfig::new(cell.alpha, cell.beta)
            };
            let seed = settings
                .base_seed
                .wrapping_add((ci as u64).wrapping_mul(1_000_003));
            let trajectory = simulate_particle(&cfg, seed);
            let rows: Vec<String> = trajectory
                .log_gap
                .iter()
                .enumerate()
                .map(|(step, lg)| format!("{step},{lg}"))
                .collect();
            write_csv(
                &settings
                    .output_dir
                    .join(format!("traj_dyn_a{}_b{}.csv", cell.alpha, cell.beta)),
                "step,log_gap",
                &rows,
            )?;
        }
    }
    Ok(())
}
