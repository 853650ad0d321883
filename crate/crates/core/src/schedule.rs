//! Parameter schedules over the iteration budget.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Constant or linearly interpolated parameter value over iterations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Schedule<T> {
    Constant(T),
    Linear { start: T, end: T },
}

impl<T: Real> Schedule<T> {
    pub fn constant(value: T) -> Self {
        Schedule::Constant(value)
    }

    pub fn linear(start: T, end: T) -> Self {
        Schedule::Linear { start, end }
    }

    pub fn start_value(&self) -> T {
        match *self {
            Schedule::Constant(v) => v,
            Schedule::Linear { start, .. } => start,
        }
    }

    pub fn end_value(&self) -> T {
        match *self {
            Schedule::Constant(v) => v,
            Schedule::Linear { end, .. } => end,
        }
    }

    /// Value at iteration `n` of a run lasting `n_max` iterations.
    ///
    /// The linear kind interpolates on the iteration index:
    /// `start - (start - end) * n / n_max`.
    pub fn value(&self, n: usize, n_max: usize) -> Result<T> {
        if n_max < 1 {
            return Err(Error::InvalidInput("schedule requires n_max >= 1".into()));
        }
        if n > n_max {
            return Err(Error::InvalidInput(format!(
                "schedule evaluated at n={n} beyond n_max={n_max}"
            )));
        }
        Ok(match *self {
            Schedule::Constant(v) => v,
            Schedule::Linear { start, end } => {
                // convex form so both endpoints are exact
                let frac = T::from_usize(n) / T::from_usize(n_max);
                start * (T::one() - frac) + end * frac
            }
        })
    }
}
