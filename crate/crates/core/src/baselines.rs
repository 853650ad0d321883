//! Canonical PSO baselines: the original update rule, inertia weight,
//! constriction factor, and SPSO (constriction plus ring topology).
//!
//! All four share one velocity kernel
//! `v' = a*v + b1*r*(pbest - x) + b2*R*(guide - x)` with per-variant
//! coefficients: `(1, c1, c2)` for the original rule, `(w_n, c1, c2)` for the
//! inertia weight, and `(chi, chi*c1, chi*c2)` for constriction. This makes
//! the constriction/inertia correspondence exact under a shared random
//! stream.

use crate::error::{Error, Result};
use crate::objectives::Problem;
use crate::rng::RandomSource;
use crate::scalar::Real;
use crate::schedule::Schedule;
use crate::swarm::{clamp_unchecked, resolve_v_max, run_swarm, RunRecord, SwarmState};
use crate::topology::Topology;

/// Which canonical update rule to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaselineVariant {
    Original,
    Inertia,
    Constriction,
    Spso,
}

/// Configuration for one canonical PSO run.
#[derive(Debug, Clone)]
pub struct BaselineConfig<T> {
    pub variant: BaselineVariant,
    pub c1: T,
    pub c2: T,
    /// Inertia-weight schedule (inertia variant only).
    pub w_schedule: Schedule<T>,
    /// Constriction factor (constriction and spso variants).
    pub chi: T,
    /// Velocity limit; `None` derives half the search-range width per
    /// dimension from the problem.
    pub v_max: Option<T>,
    pub topology: Topology,
    pub particles: usize,
    pub iterations: usize,
}

impl<T: Real> BaselineConfig<T> {
    /// Original rule with c1 = c2 = 2.
    pub fn original() -> Self {
        Self {
            variant: BaselineVariant::Original,
            c1: T::from_f64(2.0),
            c2: T::from_f64(2.0),
            w_schedule: Schedule::constant(T::one()),
            chi: T::one(),
            v_max: None,
            topology: Topology::Global,
            particles: 40,
            iterations: 5000,
        }
    }

    /// Inertia weight decreasing linearly from 0.9 to 0.4, c1 = c2 = 2.
    pub fn inertia() -> Self {
        Self {
            variant: BaselineVariant::Inertia,
            w_schedule: Schedule::linear(T::from_f64(0.9), T::from_f64(0.4)),
            ..Self::original()
        }
    }

    /// Constriction factor chi(2.05, 2.05) with c1 = c2 = 2.05.
    pub fn constriction() -> Self {
        let c = T::from_f64(2.05);
        Self {
            variant: BaselineVariant::Constriction,
            c1: c,
            c2: c,
            chi: chi(c, c).expect("2.05 + 2.05 > 4"),
            ..Self::original()
        }
    }

    /// SPSO: the constriction rule on a ring topology.
    pub fn spso() -> Self {
        Self {
            variant: BaselineVariant::Spso,
            topology: Topology::Ring,
            ..Self::constriction()
        }
    }

    fn validate(&self) -> Result<()> {
        if self.particles == 0 {
            return Err(Error::InvalidInput("particles must be >= 1".into()));
        }
        if self.topology == Topology::Ring && self.particles < 3 {
            return Err(Error::InvalidInput(
                "ring topology requires at least 3 particles".into(),
            ));
        }
        if matches!(
            self.variant,
            BaselineVariant::Constriction | BaselineVariant::Spso
        ) && !(self.chi > T::zero() && self.chi < T::one())
        {
            log::warn!(
                "constriction factor {} outside (0, 1); the swarm may not converge",
                self.chi
            );
        }
        Ok(())
    }
}

/// Constriction factor `2 / |2 - phi - sqrt(phi^2 - 4 phi)|` for
/// `phi = c1 + c2 > 4`.
pub fn chi<T: Real>(c1: T, c2: T) -> Result<T> {
    let phi = c1 + c2;
    let four = T::from_f64(4.0);
    if !(phi > four) {
        return Err(Error::Domain(format!(
            "constriction factor requires c1 + c2 > 4, got {phi}"
        )));
    }
    let two = T::from_f64(2.0);
    Ok(two / (two - phi - (phi * phi - four * phi).sqrt()).abs())
}

/// One velocity component of the shared kernel, with the two uniform draws
/// pinned by the caller.
pub fn velocity_kernel<T: Real>(
    inertia: T,
    b1: T,
    b2: T,
    v: T,
    x: T,
    pbest: T,
    guide: T,
    r: T,
    big_r: T,
) -> T {
    inertia * v + b1 * r * (pbest - x) + b2 * big_r * (guide - x)
}

fn coefficients<T: Real>(cfg: &BaselineConfig<T>, iteration: usize) -> (T, T, T) {
    match cfg.variant {
        BaselineVariant::Original => (T::one(), cfg.c1, cfg.c2),
        BaselineVariant::Inertia => {
            let n_max = cfg.iterations.max(1);
            let w = cfg
                .w_schedule
                .value(iteration.min(n_max), n_max)
                .expect("schedule range checked");
            (w, cfg.c1, cfg.c2)
        }
        BaselineVariant::Constriction | BaselineVariant::Spso => {
            (cfg.chi, cfg.chi * cfg.c1, cfg.chi * cfg.c2)
        }
    }
}

/// Advances the swarm by one iteration: evaluate, update bests sequentially,
/// then move every particle.
pub fn step<T: Real>(
    state: &mut SwarmState<T>,
    cfg: &BaselineConfig<T>,
    problem: &Problem<T>,
    v_max: &[T],
    rng: &mut RandomSource,
) {
    let (a, b1, b2) = coefficients(cfg, state.iteration);
    let m = state.particles();
    let dim = state.dim();
    for i in 0..m {
        let fx = problem.evaluate_sampled(&state.positions[i], rng);
        let x_now = state.positions[i].clone();
        state.update_pbest(i, &x_now, fx);
        let guide_index = match cfg.topology {
            Topology::Global => state.gbest_index,
            Topology::Ring => state.best_in_neighborhood(i, Topology::Ring),
        };
        for j in 0..dim {
            let r: T = rng.open01();
            let big_r: T = rng.open01();
            let v = velocity_kernel(
                a,
                b1,
                b2,
                state.velocities[i][j],
                state.positions[i][j],
                state.pbest_positions[i][j],
                state.pbest_positions[guide_index][j],
                r,
                big_r,
            );
            let v = clamp_unchecked(v, v_max[j]);
            state.velocities[i][j] = v;
            state.positions[i][j] += v;
        }
        if problem.bounds_enforced() {
            for (xj, &(lo, hi)) in state.positions[i].iter_mut().zip(problem.search_bounds()) {
                *xj = (*xj).max(lo).min(hi);
            }
        }
    }
    state.iteration += 1;
}

/// Runs a canonical PSO for the configured budget and seed.
pub fn run<T: Real>(
    problem: &Problem<T>,
    cfg: &BaselineConfig<T>,
    seed: u64,
) -> Result<RunRecord<T>> {
    cfg.validate()?;
    let v_max = resolve_v_max(cfg.v_max, problem);
    Ok(run_swarm(
        problem,
        cfg.particles,
        cfg.iterations,
        &v_max,
        seed,
        |state, problem, v_max, rng| step(state, cfg, problem, v_max, rng),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objectives::BaseFunction;

    #[test]
    fn chi_matches_pinned_values() {
        // 0.7298 from the recommended c1 = c2 = 2.05
        assert!((chi(2.05_f64, 2.05).unwrap() - 0.7298).abs() < 1e-4);
        // 2 / |2 - 5 - sqrt(5)|, evaluated independently
        assert!((chi(2.5_f64, 2.5).unwrap() - 0.38196601125010515).abs() < 1e-12);
        assert!(matches!(chi(2.0_f64, 2.0), Err(Error::Domain(_))));
    }

    #[test]
    fn velocity_kernel_hand_step() {
        // x=0, pbest=guide=1, v=0, c1=c2=2, pinned draws r=R=0.5
        let v = velocity_kernel(1.0, 2.0, 2.0, 0.0, 0.0, 1.0, 1.0, 0.5, 0.5);
        assert_eq!(v, 2.0);
        // pure inertia when the attraction coefficients vanish
        let v = velocity_kernel(1.0, 0.0, 0.0, 1.5, 3.0, 7.0, -2.0, 0.9, 0.1);
        assert_eq!(v, 1.5);
        // fixed point when pbest = guide = x
        let v = velocity_kernel(0.5, 2.0, 2.0, 2.0, 4.0, 4.0, 4.0, 0.3, 0.8);
        assert_eq!(v, 1.0);
        // fully stationary particle stays put
        let v = velocity_kernel(1.0, 2.0, 2.0, 0.0, 4.0, 4.0, 4.0, 0.3, 0.8);
        assert_eq!(v, 0.0);
    }

    fn sphere_problem(dim: usize) -> Problem<f64> {
        Problem::new("sphere", BaseFunction::Sphere, dim, -10.0, 10.0).unwrap()
    }

    #[test]
    fn inertia_with_unit_weight_equals_original() {
        let problem = sphere_problem(3);
        let mut original = BaselineConfig::<f64>::original();
        original.particles = 8;
        original.iterations = 30;
        let mut inertia = original.clone();
        inertia.variant = BaselineVariant::Inertia;
        inertia.w_schedule = Schedule::constant(1.0);
        let a = run(&problem, &original, 7).unwrap();
        let b = run(&problem, &inertia, 7).unwrap();
        assert_eq!(a.final_best, b.final_best);
        assert_eq!(a.best_per_iteration, b.best_per_iteration);
    }

    #[test]
    fn constriction_with_unit_chi_equals_original() {
        let problem = sphere_problem(3);
        let mut original = BaselineConfig::<f64>::original();
        original.particles = 8;
        original.iterations = 30;
        let mut constriction = original.clone();
        constriction.variant = BaselineVariant::Constriction;
        constriction.chi = 1.0;
        let a = run(&problem, &original, 11).unwrap();
        let b = run(&problem, &constriction, 11).unwrap();
        assert_eq!(a.final_best, b.final_best);
    }

    #[test]
    fn constriction_equals_reparameterized_inertia_bitwise() {
        let problem = sphere_problem(4);
        let mut co = BaselineConfig::<f64>::constriction();
        co.particles = 10;
        co.iterations = 50;
        let mut inertia = co.clone();
        inertia.variant = BaselineVariant::Inertia;
        inertia.w_schedule = Schedule::constant(co.chi);
        inertia.c1 = co.chi * co.c1;
        inertia.c2 = co.chi * co.c2;
        let a = run(&problem, &co, 3).unwrap();
        let b = run(&problem, &inertia, 3).unwrap();
        assert_eq!(a.final_position, b.final_position);
        assert_eq!(a.best_per_iteration, b.best_per_iteration);
    }

    #[test]
    fn velocities_respect_the_clamp_after_every_step() {
        let problem = sphere_problem(5);
        let mut cfg = BaselineConfig::<f64>::original();
        cfg.particles = 6;
        cfg.iterations = 1;
        cfg.v_max = Some(0.5);
        let mut rng = RandomSource::new(2);
        let v_max = resolve_v_max(cfg.v_max, &problem);
        let mut state = SwarmState::init(&problem, cfg.particles, &v_max, &mut rng);
        for _ in 0..20 {
            step(&mut state, &cfg, &problem, &v_max, &mut rng);
            for v in state.velocities.iter().flatten() {
                assert!(v.abs() <= 0.5);
            }
        }
    }

    #[test]
    fn spso_requires_three_particles() {
        let problem = sphere_problem(2);
        let mut cfg = BaselineConfig::<f64>::spso();
        cfg.particles = 2;
        assert!(run(&problem, &cfg, 0).is_err());
    }

    #[test]
    fn seeded_runs_are_reproducible() {
        let problem = sphere_problem(3);
        let mut cfg = BaselineConfig::<f64>::spso();
        cfg.particles = 6;
        cfg.iterations = 40;
        let a = run(&problem, &cfg, 123).unwrap();
        let b = run(&problem, &cfg, 123).unwrap();
        assert_eq!(a.final_position, b.final_position);
        assert_eq!(a.best_per_iteration, b.best_per_iteration);
    }
}
