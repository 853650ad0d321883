//! Name-based algorithm selection shared by the CLI and experiment drivers.

use crate::baselines::{self, BaselineConfig};
use crate::error::{Error, Result};
use crate::objectives::Problem;
use crate::rdpso::{self, RdpsoConfig};
use crate::scalar::Real;
use crate::schedule::Schedule;
use crate::swarm::RunRecord;

/// Selectable algorithm names.
pub const ALGORITHM_NAMES: [&str; 8] = [
    "pso-original",
    "pso-in",
    "pso-co",
    "spso",
    "rdpso-gbest",
    "rdpso-gbest-rp",
    "rdpso-lbest",
    "rdpso-lbest-rp",
];

/// A fully resolved algorithm: either a canonical PSO baseline or an RDPSO
/// variant.
#[derive(Debug, Clone)]
pub enum AlgorithmSpec<T> {
    Baseline(BaselineConfig<T>),
    Rdpso(RdpsoConfig<T>),
}

impl<T: Real> AlgorithmSpec<T> {
    /// Builds the named algorithm with its recommended default parameters.
    pub fn by_name(name: &str) -> Result<Self> {
        Ok(match name {
            "pso-original" => AlgorithmSpec::Baseline(BaselineConfig::original()),
            "pso-in" => AlgorithmSpec::Baseline(BaselineConfig::inertia()),
            "pso-co" => AlgorithmSpec::Baseline(BaselineConfig::constriction()),
            "spso" => AlgorithmSpec::Baseline(BaselineConfig::spso()),
            "rdpso-gbest" => AlgorithmSpec::Rdpso(RdpsoConfig::gbest()),
            "rdpso-gbest-rp" => AlgorithmSpec::Rdpso(RdpsoConfig::gbest_rp()),
            "rdpso-lbest" => AlgorithmSpec::Rdpso(RdpsoConfig::lbest()),
            "rdpso-lbest-rp" => AlgorithmSpec::Rdpso(RdpsoConfig::lbest_rp()),
            _ => {
                return Err(Error::UnknownAlgorithm {
                    name: name.to_string(),
                    valid: ALGORITHM_NAMES.iter().map(|s| s.to_string()).collect(),
                })
            }
        })
    }

    /// Applies a named parameter override (config-file keys).
    ///
    /// Keys: `alpha_start`, `alpha_end`, `alpha` (constant), `beta`, `c1`,
    /// `c2`, `vmax`, `particles`, `iterations`, and for the baselines
    /// `w_start`, `w_end`, `w` (constant), `chi`.
    pub fn apply_param(&mut self, key: &str, value: f64) -> Result<()> {
        let tv = T::from_f64(value);
        let unsupported = |key: &str| {
            Err(Error::InvalidInput(format!(
                "parameter '{key}' does not apply to this algorithm"
            )))
        };
        match key {
            "particles" => {
                let particles = value as usize;
                match self {
                    AlgorithmSpec::Baseline(cfg) => cfg.particles = particles,
                    AlgorithmSpec::Rdpso(cfg) => cfg.particles = particles,
                }
            }
            "iterations" => {
                let iterations = value as usize;
                match self {
                    AlgorithmSpec::Baseline(cfg) => cfg.iterations = iterations,
                    AlgorithmSpec::Rdpso(cfg) => cfg.iterations = iterations,
                }
            }
            "vmax" => match self {
                AlgorithmSpec::Baseline(cfg) => cfg.v_max = Some(tv),
                AlgorithmSpec::Rdpso(cfg) => cfg.v_max = Some(tv),
            },
            "c1" => match self {
                AlgorithmSpec::Baseline(cfg) => cfg.c1 = tv,
                AlgorithmSpec::Rdpso(cfg) => cfg.c1 = tv,
            },
            "c2" => match self {
                AlgorithmSpec::Baseline(cfg) => cfg.c2 = tv,
                AlgorithmSpec::Rdpso(cfg) => cfg.c2 = tv,
            },
            "alpha" => match self {
                AlgorithmSpec::Rdpso(cfg) => cfg.alpha_schedule = Schedule::constant(tv),
                AlgorithmSpec::Baseline(_) => return unsupported(key),
            },
            "alpha_start" => match self {
                AlgorithmSpec::Rdpso(cfg) => {
                    cfg.alpha_schedule =
                        Schedule::linear(tv, cfg.alpha_schedule.end_value());
                }
                AlgorithmSpec::Baseline(_) => return unsupported(key),
            },
            "alpha_end" => match self {
                AlgorithmSpec::Rdpso(cfg) => {
                    cfg.alpha_schedule =
                        Schedule::linear(cfg.alpha_schedule.start_value(), tv);
                }
                AlgorithmSpec::Baseline(_) => return unsupported(key),
            },
            "beta" => match self {
                AlgorithmSpec::Rdpso(cfg) => cfg.beta = tv,
                AlgorithmSpec::Baseline(_) => return unsupported(key),
            },
            "w" => match self {
                AlgorithmSpec::Baseline(cfg) => cfg.w_schedule = Schedule::constant(tv),
                AlgorithmSpec::Rdpso(_) => return unsupported(key),
            },
            "w_start" => match self {
                AlgorithmSpec::Baseline(cfg) => {
                    cfg.w_schedule = Schedule::linear(tv, cfg.w_schedule.end_value());
                }
                AlgorithmSpec::Rdpso(_) => return unsupported(key),
            },
            "w_end" => match self {
                AlgorithmSpec::Baseline(cfg) => {
                    cfg.w_schedule = Schedule::linear(cfg.w_schedule.start_value(), tv);
                }
                AlgorithmSpec::Rdpso(_) => return unsupported(key),
            },
            "chi" => match self {
                AlgorithmSpec::Baseline(cfg) => cfg.chi = tv,
                AlgorithmSpec::Rdpso(_) => return unsupported(key),
            },
            _ => {
                return Err(Error::InvalidInput(format!(
                    "unknown algorithm parameter '{key}'"
                )))
            }
        }
        Ok(())
    }

    pub fn particles(&self) -> usize {
        match self {
            AlgorithmSpec::Baseline(cfg) => cfg.particles,
            AlgorithmSpec::Rdpso(cfg) => cfg.particles,
        }
    }

    pub fn iterations(&self) -> usize {
        match self {
            AlgorithmSpec::Baseline(cfg) => cfg.iterations,
            AlgorithmSpec::Rdpso(cfg) => cfg.iterations,
        }
    }

    pub fn set_budget(&mut self, particles: usize, iterations: usize) {
        match self {
            AlgorithmSpec::Baseline(cfg) => {
                cfg.particles = particles;
                cfg.iterations = iterations;
            }
            AlgorithmSpec::Rdpso(cfg) => {
                cfg.particles = particles;
                cfg.iterations = iterations;
            }
        }
    }

    /// One seeded run on the given problem.
    pub fn run(&self, problem: &Problem<T>, seed: u64) -> Result<RunRecord<T>> {
        match self {
            AlgorithmSpec::Baseline(cfg) => baselines::run(problem, cfg, seed),
            AlgorithmSpec::Rdpso(cfg) => rdpso::run(problem, cfg, seed),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objectives::BaseFunction;

    #[test]
    fn every_listed_name_resolves() {
        for name in ALGORITHM_NAMES {
            assert!(AlgorithmSpec::<f64>::by_name(name).is_ok(), "{name}");
        }
    }

    #[test]
    fn unknown_name_lists_valid_algorithms() {
        match AlgorithmSpec::<f64>::by_name("xyz") {
            Err(Error::UnknownAlgorithm { name, valid }) => {
                assert_eq!(name, "xyz");
                assert_eq!(valid.len(), 8);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn parameter_overrides_apply() {
        let mut spec = AlgorithmSpec::<f64>::by_name("rdpso-gbest").unwrap();
        spec.apply_param("alpha_start", 0.8).unwrap();
        spec.apply_param("alpha_end", 0.2).unwrap();
        spec.apply_param("beta", 1.5).unwrap();
        spec.apply_param("particles", 10.0).unwrap();
        match &spec {
            AlgorithmSpec::Rdpso(cfg) => {
                assert_eq!(cfg.alpha_schedule.start_value(), 0.8);
                assert_eq!(cfg.alpha_schedule.end_value(), 0.2);
                assert_eq!(cfg.beta, 1.5);
                assert_eq!(cfg.particles, 10);
            }
            _ => unreachable!(),
        }
        assert!(spec.apply_param("w", 0.5).is_err());
        assert!(spec.apply_param("nope", 0.5).is_err());
    }

    #[test]
    fn named_run_works_end_to_end() {
        let problem = Problem::new("sphere", BaseFunction::Sphere, 2, -5.0, 5.0).unwrap();
        let mut spec = AlgorithmSpec::<f64>::by_name("spso").unwrap();
        spec.set_budget(6, 25);
        let record = spec.run(&problem, 3).unwrap();
        assert_eq!(record.best_per_iteration.len(), 26);
    }
}
