//! Swarm optimization built around a random-drift velocity model.
//!
//! The crate provides:
//!
//! - [`rdpso`]: the random drift PSO update rule and its four variants
//!   ({global, ring} topology crossed with {mean-best, random-pbest} anchors);
//! - [`baselines`]: the canonical PSO rules it is compared against
//!   (original, inertia weight, constriction factor, and SPSO);
//! - [`objectives`]: shifted/rotated benchmark functions with data-file
//!   loading;
//! - [`dynamics`]: the one-dimensional single-particle model, its
//!   log-growth-rate integral, and boundedness classification;
//! - [`stats`]: multi-run summaries, Welch's t-test, and competition-rank
//!   aggregation;
//! - [`algorithm`]: name-based dispatch used by experiment drivers.
//!
//! Everything numeric is generic over [`scalar::Real`] (`f64` or `f32`);
//! the `*64` aliases below pin the default working type.

pub mod algorithm;
pub mod baselines;
pub mod dynamics;
pub mod error;
pub mod objectives;
pub mod rdpso;
pub mod rng;
pub mod scalar;
pub mod schedule;
pub mod stats;
pub mod swarm;
pub mod topology;

pub use error::{Error, Result};
pub use rng::RandomSource;
pub use scalar::Real;
pub use schedule::Schedule;
pub use topology::Topology;

/// `f64` instantiations of the main entry points.
pub type Problem64 = objectives::Problem<f64>;
pub type SwarmState64 = swarm::SwarmState<f64>;
pub type RunRecord64 = swarm::RunRecord<f64>;
pub type BaselineConfig64 = baselines::BaselineConfig<f64>;
pub type RdpsoConfig64 = rdpso::RdpsoConfig<f64>;
pub type AlgorithmSpec64 = algorithm::AlgorithmSpec<f64>;
pub type DynamicsConfig64 = dynamics::DynamicsConfig<f64>;
pub type ResultSample64 = stats::ResultSample<f64>;
