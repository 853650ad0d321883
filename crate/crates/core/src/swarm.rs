//! Shared swarm data model: particle state, pbest/gbest bookkeeping,
//! velocity clamping, and the run harness used by every algorithm.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::objectives::Problem;
use crate::rng::RandomSource;
use crate::scalar::Real;
use crate::topology::Topology;

/// Positions, velocities and personal bests of one swarm at one iteration.
#[derive(Debug, Clone)]
pub struct SwarmState<T> {
    pub positions: Vec<Vec<T>>,
    pub velocities: Vec<Vec<T>>,
    pub pbest_positions: Vec<Vec<T>>,
    pub pbest_fitness: Vec<T>,
    pub gbest_index: usize,
    pub iteration: usize,
}

impl<T: Real> SwarmState<T> {
    pub fn particles(&self) -> usize {
        self.positions.len()
    }

    pub fn dim(&self) -> usize {
        self.positions.first().map_or(0, Vec::len)
    }

    /// Samples a fresh swarm: positions uniform in the problem's
    /// initialization box, velocities uniform in `[-v_max, v_max]` per
    /// dimension, personal bests set to the evaluated starting positions.
    pub fn init(
        problem: &Problem<T>,
        particles: usize,
        v_max: &[T],
        rng: &mut RandomSource,
    ) -> Self {
        let dim = problem.dim();
        let positions: Vec<Vec<T>> = (0..particles)
            .map(|_| {
                problem
                    .init_bounds()
                    .iter()
                    .map(|&(lo, hi)| rng.uniform(lo, hi))
                    .collect()
            })
            .collect();
        let velocities: Vec<Vec<T>> = (0..particles)
            .map(|_| (0..dim).map(|j| rng.uniform(-v_max[j], v_max[j])).collect())
            .collect();
        let pbest_fitness: Vec<T> = positions
            .iter()
            .map(|x| sanitize_fitness(problem.evaluate_sampled(x, rng)))
            .collect();
        let gbest_index = argmin_lowest_index(&pbest_fitness);
        SwarmState {
            pbest_positions: positions.clone(),
            positions,
            velocities,
            pbest_fitness,
            gbest_index,
            iteration: 0,
        }
    }

    /// Records `x` as particle `i`'s personal best iff `fx` strictly improves
    /// it, and promotes it to global best on strict improvement. Non-finite
    /// `fx` never improves a pbest. Ties keep the incumbent.
    pub fn update_pbest(&mut self, i: usize, x: &[T], fx: T) {
        let fx = sanitize_fitness(fx);
        if fx < self.pbest_fitness[i] {
            self.pbest_positions[i].copy_from_slice(x);
            self.pbest_fitness[i] = fx;
            if fx < self.pbest_fitness[self.gbest_index] {
                self.gbest_index = i;
            }
        }
    }

    /// Index of the best pbest in particle `i`'s neighborhood, ties broken
    /// toward the lowest particle index.
    pub fn best_in_neighborhood(&self, i: usize, topology: Topology) -> usize {
        let mut best = usize::MAX;
        let mut best_fit = T::infinity();
        for k in topology.neighbors(i, self.particles()) {
            let f = self.pbest_fitness[k];
            if f < best_fit || (f == best_fit && k < best) {
                best_fit = f;
                best = k;
            }
        }
        best
    }

    pub fn gbest_position(&self) -> &[T] {
        &self.pbest_positions[self.gbest_index]
    }

    pub fn gbest_fitness(&self) -> T {
        self.pbest_fitness[self.gbest_index]
    }
}

/// Maps non-finite objective values to +infinity so they never win a pbest
/// comparison.
pub fn sanitize_fitness<T: Real>(fx: T) -> T {
    if fx.is_finite() {
        fx
    } else {
        T::infinity()
    }
}

fn argmin_lowest_index<T: Real>(values: &[T]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate().skip(1) {
        if v < values[best] {
            best = i;
        }
    }
    best
}

/// Restricts a velocity component to `[-v_max, v_max]`.
pub fn clamp_velocity<T: Real>(v: T, v_max: T) -> Result<T> {
    if !v_max.is_finite() || v_max <= T::zero() {
        return Err(Error::InvalidInput(format!(
            "v_max must be positive and finite, got {v_max}"
        )));
    }
    if !v.is_finite() {
        return Err(Error::NonFinite(format!("velocity {v}")));
    }
    Ok(clamp_unchecked(v, v_max))
}

/// Infallible clamp used by the inner update loops; infinities saturate to
/// the box.
pub(crate) fn clamp_unchecked<T: Real>(v: T, v_max: T) -> T {
    v.max(-v_max).min(v_max)
}

/// Per-dimension velocity limit: an explicit scalar if configured, otherwise
/// half the search-range width of each dimension.
pub fn resolve_v_max<T: Real>(explicit: Option<T>, problem: &Problem<T>) -> Vec<T> {
    match explicit {
        Some(v) => vec![v; problem.dim()],
        None => problem
            .search_bounds()
            .iter()
            .map(|&(lo, hi)| (hi - lo) / T::from_f64(2.0))
            .collect(),
    }
}

/// Outcome of one seeded run: best-so-far trajectory and the final best.
#[derive(Debug, Clone)]
pub struct RunRecord<T> {
    pub final_best: T,
    pub final_position: Vec<T>,
    /// Best-so-far fitness, entry 0 for the initial population and one entry
    /// per iteration after that.
    pub best_per_iteration: Vec<T>,
    pub wall_ms: f64,
}

/// Shared run loop: initialize, iterate a step function, record best-so-far.
pub(crate) fn run_swarm<T, F>(
    problem: &Problem<T>,
    particles: usize,
    iterations: usize,
    v_max: &[T],
    seed: u64,
    mut step: F,
) -> RunRecord<T>
where
    T: Real,
    F: FnMut(&mut SwarmState<T>, &Problem<T>, &[T], &mut RandomSource),
{
    let start = Instant::now();
    let mut rng = RandomSource::new(seed);
    let mut state = SwarmState::init(problem, particles, v_max, &mut rng);
    let mut best_per_iteration = Vec::with_capacity(iterations + 1);
    best_per_iteration.push(state.gbest_fitness());
    for _ in 0..iterations {
        step(&mut state, problem, v_max, &mut rng);
        best_per_iteration.push(state.gbest_fitness());
    }
    RunRecord {
        final_best: state.gbest_fitness(),
        final_position: state.gbest_position().to_vec(),
        best_per_iteration,
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objectives::BaseFunction;

    fn toy_state() -> SwarmState<f64> {
        SwarmState {
            positions: vec![vec![0.0]; 3],
            velocities: vec![vec![0.0]; 3],
            pbest_positions: vec![vec![0.0], vec![1.0], vec![2.0]],
            pbest_fitness: vec![3.0, 1.0, 2.0],
            gbest_index: 1,
            iteration: 0,
        }
    }

    #[test]
    fn clamp_velocity_examples() {
        assert_eq!(clamp_velocity(5.0, 2.0).unwrap(), 2.0);
        assert_eq!(clamp_velocity(-5.0, 2.0).unwrap(), -2.0);
        assert_eq!(clamp_velocity(1.5, 2.0).unwrap(), 1.5);
        assert!(matches!(
            clamp_velocity(f64::NAN, 2.0),
            Err(Error::NonFinite(_))
        ));
        assert!(clamp_velocity(1.0, 0.0).is_err());
    }

    #[test]
    fn pbest_updates_on_strict_improvement_only() {
        let mut s = toy_state();
        s.update_pbest(0, &[9.0], 1.0);
        assert_eq!(s.pbest_fitness[0], 1.0);
        assert_eq!(s.pbest_positions[0], vec![9.0]);

        // tie keeps the incumbent
        let mut s = toy_state();
        s.update_pbest(0, &[9.0], 3.0);
        assert_eq!(s.pbest_fitness[0], 3.0);
        assert_eq!(s.pbest_positions[0], vec![0.0]);

        // NaN is treated as +infinity
        let mut s = toy_state();
        s.update_pbest(0, &[9.0], f64::NAN);
        assert_eq!(s.pbest_fitness[0], 3.0);
    }

    #[test]
    fn gbest_follows_strict_improvements() {
        let mut s = toy_state();
        s.update_pbest(2, &[5.0], 0.5);
        assert_eq!(s.gbest_index, 2);
        // equal fitness does not steal the global best
        s.update_pbest(0, &[6.0], 0.5);
        assert_eq!(s.gbest_index, 2);
    }

    #[test]
    fn neighborhood_best_examples() {
        let s = toy_state();
        assert_eq!(s.best_in_neighborhood(0, Topology::Global), 1);

        let s = SwarmState::<f64> {
            positions: vec![vec![0.0]; 5],
            velocities: vec![vec![0.0]; 5],
            pbest_positions: vec![vec![0.0]; 5],
            pbest_fitness: vec![3.0, 1.0, 2.0, 0.0, 9.0],
            gbest_index: 3,
            iteration: 0,
        };
        // ring neighborhood of 0 is {4, 0, 1}
        assert_eq!(s.best_in_neighborhood(0, Topology::Ring), 1);

        let tied = SwarmState::<f64> {
            positions: vec![vec![0.0]; 3],
            velocities: vec![vec![0.0]; 3],
            pbest_positions: vec![vec![0.0]; 3],
            pbest_fitness: vec![1.0, 1.0, 1.0],
            gbest_index: 0,
            iteration: 0,
        };
        assert_eq!(tied.best_in_neighborhood(2, Topology::Global), 0);
        assert_eq!(tied.best_in_neighborhood(2, Topology::Ring), 0);
    }

    #[test]
    fn init_respects_bounds_and_evaluates_pbests() {
        let problem: Problem<f64> =
            Problem::new("sphere", BaseFunction::Sphere, 4, -3.0, 3.0).unwrap();
        let v_max = resolve_v_max(None, &problem);
        assert_eq!(v_max, vec![3.0; 4]);
        let mut rng = RandomSource::new(1);
        let s = SwarmState::init(&problem, 10, &v_max, &mut rng);
        for i in 0..10 {
            for j in 0..4 {
                assert!(s.positions[i][j] > -3.0 && s.positions[i][j] < 3.0);
                assert!(s.velocities[i][j].abs() <= 3.0);
            }
            assert_eq!(
                s.pbest_fitness[i],
                problem.evaluate(&s.positions[i]).unwrap()
            );
            assert!(s.pbest_fitness[s.gbest_index] <= s.pbest_fitness[i]);
        }
    }
}
