//! Floating-point abstraction the whole crate is generic over.
//!
//! Every algorithm in this crate works on any [`Real`] scalar; `f64` is the
//! workhorse and `f32` is available for lighter experiments. The trait bundles
//! the `num-traits` float surface with the two random draws the swarm update
//! rules need, so callers only ever carry a single bound.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, NumAssign};
use rand::distributions::Open01;
use rand::Rng;
use rand_distr::StandardNormal;

/// Scalar type for swarm states, objectives, dynamics, and statistics.
pub trait Real:
    Float + FloatConst + NumAssign + Sum + Debug + Display + Send + Sync + 'static
{
    /// Conversion from `f64`, used for pinned constants and parsed input.
    fn from_f64(v: f64) -> Self;

    /// Widening conversion to `f64`, used for reporting and CSV output.
    fn to_f64(self) -> f64;

    fn from_usize(n: usize) -> Self {
        Self::from_f64(n as f64)
    }

    /// One draw from the open interval (0, 1).
    fn draw_open01<R: Rng + ?Sized>(rng: &mut R) -> Self;

    /// One standard-normal draw.
    fn draw_standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self;
}

impl Real for f64 {
    fn from_f64(v: f64) -> Self {
        v
    }

    fn to_f64(self) -> f64 {
        self
    }

    fn draw_open01<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rng.sample(Open01)
    }

    fn draw_standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rng.sample(StandardNormal)
    }
}

impl Real for f32 {
    fn from_f64(v: f64) -> Self {
        v as f32
    }

    fn to_f64(self) -> f64 {
        f64::from(self)
    }

    fn draw_open01<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rng.sample(Open01)
    }

    fn draw_standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rng.sample(StandardNormal)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roundtrip<T: Real>() {
        assert_eq!(T::from_f64(2.5).to_f64(), 2.5);
        assert_eq!(T::from_usize(7).to_f64(), 7.0);
    }

    #[test]
    fn conversions_hold_for_both_widths() {
        roundtrip::<f32>();
        roundtrip::<f64>();
    }
}
