//! Random drift particle swarm optimization.
//!
//! Each velocity component is the sum of a thermal part and a drift part:
//! a Gaussian draw scaled by `alpha * |anchor - x|`, plus a deterministic
//! pull `beta * (focus - x)` toward the particle's local focus. The anchor is
//! either the mean of the pbest positions (mbest) or a randomly selected
//! pbest, over the whole population or a ring neighborhood, giving four
//! variants.

use crate::error::{Error, Result};
use crate::objectives::Problem;
use crate::rng::RandomSource;
use crate::scalar::Real;
use crate::schedule::Schedule;
use crate::swarm::{clamp_unchecked, resolve_v_max, run_swarm, RunRecord, SwarmState};
use crate::topology::Topology;

/// The four RDPSO variants: {global, ring} topology crossed with
/// {mean-best, random-pbest} anchors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RdpsoVariant {
    Gbest,
    GbestRp,
    Lbest,
    LbestRp,
}

impl RdpsoVariant {
    pub fn topology(self) -> Topology {
        match self {
            RdpsoVariant::Gbest | RdpsoVariant::GbestRp => Topology::Global,
            RdpsoVariant::Lbest | RdpsoVariant::LbestRp => Topology::Ring,
        }
    }

    /// True when the anchor is a randomly selected pbest instead of the mean.
    pub fn random_anchor(self) -> bool {
        matches!(self, RdpsoVariant::GbestRp | RdpsoVariant::LbestRp)
    }
}

/// Configuration for one RDPSO run.
#[derive(Debug, Clone)]
pub struct RdpsoConfig<T> {
    pub variant: RdpsoVariant,
    /// Thermal coefficient schedule.
    pub alpha_schedule: Schedule<T>,
    /// Drift coefficient.
    pub beta: T,
    /// Weights inside the local-focus combination; 1 each by default, which
    /// makes the focus uniform in the pbest-guide hyper-rectangle.
    pub c1: T,
    pub c2: T,
    /// Velocity limit; `None` derives half the search-range width per
    /// dimension from the problem.
    pub v_max: Option<T>,
    pub particles: usize,
    pub iterations: usize,
}

impl<T: Real> RdpsoConfig<T> {
    fn with_defaults(variant: RdpsoVariant, alpha_start: f64, alpha_end: f64) -> Self {
        Self {
            variant,
            alpha_schedule: Schedule::linear(T::from_f64(alpha_start), T::from_f64(alpha_end)),
            beta: T::from_f64(1.45),
            c1: T::one(),
            c2: T::one(),
            v_max: None,
            particles: 40,
            iterations: 5000,
        }
    }

    /// Global mean-best variant, alpha 0.9 -> 0.3, beta 1.45.
    pub fn gbest() -> Self {
        Self::with_defaults(RdpsoVariant::Gbest, 0.9, 0.3)
    }

    /// Global random-pbest variant, alpha 0.6 -> 0.2, beta 1.45.
    pub fn gbest_rp() -> Self {
        Self::with_defaults(RdpsoVariant::GbestRp, 0.6, 0.2)
    }

    /// Ring mean-best variant, alpha 0.9 -> 0.3, beta 1.45.
    pub fn lbest() -> Self {
        Self::with_defaults(RdpsoVariant::Lbest, 0.9, 0.3)
    }

    /// Ring random-pbest variant, alpha 0.9 -> 0.3, beta 1.45.
    pub fn lbest_rp() -> Self {
        Self::with_defaults(RdpsoVariant::LbestRp, 0.9, 0.3)
    }

    /// Rejects impossible setups and warns about parameter values outside
    /// the stability region (allowed, since divergence studies need them).
    pub fn validate(&self) -> Result<()> {
        if self.particles == 0 {
            return Err(Error::InvalidInput("particles must be >= 1".into()));
        }
        if self.variant.topology() == Topology::Ring && self.particles < 3 {
            return Err(Error::InvalidInput(
                "ring topology requires at least 3 particles".into(),
            ));
        }
        if !(self.beta > T::zero() && self.beta < T::from_f64(2.0)) {
            log::warn!(
                "drift coefficient beta = {} outside (0, 2); particles may diverge",
                self.beta
            );
        }
        for alpha in [
            self.alpha_schedule.start_value(),
            self.alpha_schedule.end_value(),
        ] {
            if !(alpha > T::zero() && alpha < T::one()) {
                log::warn!(
                    "thermal coefficient alpha = {alpha} outside (0, 1); \
                     the sufficient stability condition no longer applies"
                );
            }
        }
        Ok(())
    }
}

/// Coordinate-wise mean of the pbest positions over particle `i`'s
/// neighborhood (the whole population under the global topology).
///
/// Summation is anchored on the first neighbor so that identical pbests
/// yield the exact common vector.
pub fn mean_best<T: Real>(state: &SwarmState<T>, i: usize, topology: Topology) -> Vec<T> {
    let members: Vec<usize> = topology.neighbors(i, state.particles()).collect();
    let count = T::from_usize(members.len());
    let base = &state.pbest_positions[members[0]];
    (0..state.dim())
        .map(|j| {
            let acc: T = members
                .iter()
                .map(|&k| state.pbest_positions[k][j] - base[j])
                .sum();
            base[j] + acc / count
        })
        .collect()
}

/// The pbest position of a particle selected uniformly from `i`'s
/// neighborhood (one draw, shared across dimensions).
pub fn random_pbest<T: Real>(
    state: &SwarmState<T>,
    i: usize,
    topology: Topology,
    rng: &mut RandomSource,
) -> Vec<T> {
    let members: Vec<usize> = topology.neighbors(i, state.particles()).collect();
    let pick = members[rng.index(members.len())];
    state.pbest_positions[pick].clone()
}

/// One coordinate of the local focus with the uniform draws pinned:
/// `(c1*r*pbest + c2*R*guide) / (c1*r + c2*R)`, evaluated in convex form and
/// kept inside `[min(pbest, guide), max(pbest, guide)]`.
pub fn focus_coordinate<T: Real>(pbest: T, guide: T, c1: T, c2: T, r: T, big_r: T) -> T {
    let weight = c2 * big_r / (c1 * r + c2 * big_r);
    let focus = pbest + weight * (guide - pbest);
    focus.max(pbest.min(guide)).min(pbest.max(guide))
}

/// Random convex combination of the particle's pbest and its guiding best,
/// with fresh `r, R ~ U(0,1)` per dimension.
pub fn local_focus<T: Real>(
    pbest: &[T],
    guide: &[T],
    c1: T,
    c2: T,
    rng: &mut RandomSource,
) -> Vec<T> {
    pbest
        .iter()
        .zip(guide)
        .map(|(&p, &g)| {
            let r: T = rng.open01();
            let big_r: T = rng.open01();
            focus_coordinate(p, g, c1, c2, r, big_r)
        })
        .collect()
}

/// One velocity coordinate with the normal draw pinned:
/// `alpha * |anchor - x| * phi + beta * (focus - x)`.
pub fn velocity_coordinate<T: Real>(x: T, anchor: T, focus: T, alpha: T, beta: T, phi: T) -> T {
    alpha * (anchor - x).abs() * phi + beta * (focus - x)
}

/// One velocity coordinate with a fresh standard-normal draw.
pub fn rdpso_velocity<T: Real>(
    x: T,
    anchor: T,
    focus: T,
    alpha: T,
    beta: T,
    rng: &mut RandomSource,
) -> T {
    velocity_coordinate(x, anchor, focus, alpha, beta, rng.standard_normal())
}

enum Anchors<T> {
    Shared(Vec<T>),
    PerParticle(Vec<Vec<T>>),
}

impl<T> Anchors<T> {
    fn get(&self, i: usize) -> &[T] {
        match self {
            Anchors::Shared(v) => v,
            Anchors::PerParticle(rows) => &rows[i],
        }
    }
}

/// Advances the swarm by one iteration.
///
/// Anchors are computed from the pbests as of the iteration start; inside the
/// particle loop each particle is evaluated, its pbest and the global best
/// are updated, and it then moves, so later particles see earlier updates.
pub fn step<T: Real>(
    state: &mut SwarmState<T>,
    cfg: &RdpsoConfig<T>,
    problem: &Problem<T>,
    v_max: &[T],
    rng: &mut RandomSource,
) {
    let m = state.particles();
    let dim = state.dim();
    let topology = cfg.variant.topology();
    let n_max = cfg.iterations.max(1);
    let alpha = cfg
        .alpha_schedule
        .value(state.iteration.min(n_max), n_max)
        .expect("schedule range checked");

    let anchors = if cfg.variant.random_anchor() {
        Anchors::PerParticle((0..m).map(|i| random_pbest(state, i, topology, rng)).collect())
    } else {
        match topology {
            Topology::Global => Anchors::Shared(mean_best(state, 0, Topology::Global)),
            Topology::Ring => {
                Anchors::PerParticle((0..m).map(|i| mean_best(state, i, Topology::Ring)).collect())
            }
        }
    };

    for i in 0..m {
        let fx = problem.evaluate_sampled(&state.positions[i], rng);
        let x_now = state.positions[i].clone();
        state.update_pbest(i, &x_now, fx);
        let guide_index = match topology {
            Topology::Global => state.gbest_index,
            Topology::Ring => state.best_in_neighborhood(i, Topology::Ring),
        };
        let anchor = anchors.get(i);
        for j in 0..dim {
            let r: T = rng.open01();
            let big_r: T = rng.open01();
            let focus = focus_coordinate(
                state.pbest_positions[i][j],
                state.pbest_positions[guide_index][j],
                cfg.c1,
                cfg.c2,
                r,
                big_r,
            );
            let phi: T = rng.standard_normal();
            let v = velocity_coordinate(
                state.positions[i][j],
                anchor[j],
                focus,
                alpha,
                cfg.beta,
                phi,
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

/// Runs RDPSO for the configured budget and seed, recording the best-so-far
/// trajectory.
pub fn run<T: Real>(problem: &Problem<T>, cfg: &RdpsoConfig<T>, seed: u64) -> Result<RunRecord<T>> {
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
