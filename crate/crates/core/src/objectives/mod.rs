//! Benchmark problems: base functions plus optional shift, rotation, bias
//! and multiplicative evaluation noise, with data-file loading and seeded
//! random rotations.

mod functions;

pub use functions::{
    ackley, elliptic, griewank, griewank_rosenbrock, rastrigin, rosenbrock, scaffer_f6_expanded,
    schwefel_1_2, sphere, weierstrass, BaseFunction,
};

use crate::error::{Error, Result};
use crate::rng::RandomSource;
use crate::scalar::Real;

/// Tolerance for the orthogonality check on rotation matrices.
pub const ORTHOGONALITY_TOL: f64 = 1e-9;

/// CLI-facing names of the built-in problem instances.
pub const PROBLEM_NAMES: [&str; 12] = [
    "f1_sphere",
    "f2_schwefel12",
    "f3_elliptic_rot",
    "f4_schwefel12_noise",
    "f6_rosenbrock",
    "f7_griewank_rot_nobounds",
    "f8_ackley_rot",
    "f9_rastrigin",
    "f10_rastrigin_rot",
    "f11_weierstrass_rot",
    "f13_griewank_rosenbrock",
    "f14_scaffer_rot",
];

/// An objective to minimize: `base(rotation * (x - shift)) + bias`, with
/// optional multiplicative noise applied to the base value on sampled
/// evaluations.
#[derive(Debug, Clone)]
pub struct Problem<T> {
    name: String,
    dim: usize,
    base: BaseFunction,
    search_bounds: Vec<(T, T)>,
    init_bounds: Vec<(T, T)>,
    shift: Option<Vec<T>>,
    rotation: Option<Vec<Vec<T>>>,
    bias: T,
    bounds_enforced: bool,
    noise_scale: Option<T>,
}

impl<T: Real> Problem<T> {
    /// Plain problem with identical search and initialization boxes.
    pub fn new(
        name: impl Into<String>,
        base: BaseFunction,
        dim: usize,
        lo: T,
        hi: T,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("problem dimension must be >= 1".into()));
        }
        if !(lo < hi) {
            return Err(Error::InvalidInput(format!(
                "bounds must satisfy lo < hi, got [{lo}, {hi}]"
            )));
        }
        Ok(Self {
            name: name.into(),
            dim,
            base,
            search_bounds: vec![(lo, hi); dim],
            init_bounds: vec![(lo, hi); dim],
            shift: None,
            rotation: None,
            bias: T::zero(),
            bounds_enforced: false,
            noise_scale: None,
        })
    }

    pub fn with_shift(mut self, shift: Vec<T>) -> Result<Self> {
        if shift.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: shift.len(),
            });
        }
        self.shift = Some(shift);
        Ok(self)
    }

    pub fn with_rotation(mut self, rotation: Vec<Vec<T>>) -> Result<Self> {
        validate_rotation(&rotation, self.dim)?;
        self.rotation = Some(rotation);
        Ok(self)
    }

    pub fn with_bias(mut self, bias: T) -> Self {
        self.bias = bias;
        self
    }

    pub fn with_init_bounds(mut self, bounds: Vec<(T, T)>) -> Result<Self> {
        validate_bounds(&bounds, self.dim)?;
        self.init_bounds = bounds;
        Ok(self)
    }

    pub fn with_bounds_enforced(mut self, enforced: bool) -> Self {
        self.bounds_enforced = enforced;
        self
    }

    /// Multiplies the base value by `1 + scale * |N(0,1)|` on sampled
    /// evaluations.
    pub fn with_noise(mut self, scale: T) -> Self {
        self.noise_scale = Some(scale);
        self
    }

    /// Builds one of the named benchmark instances at the given dimension.
    ///
    /// Shift vectors (and rotations where the name asks for one) are
    /// generated from a seed derived from the name, so every experiment sees
    /// the same instance. Use [`Problem::named_with_seed`] to vary them.
    pub fn named(name: &str, dim: usize) -> Result<Self> {
        Self::named_with_seed(name, dim, default_data_seed(name, dim))
    }

    pub fn named_with_seed(name: &str, dim: usize, data_seed: u64) -> Result<Self> {
        let (base, lo, hi, rotated, noisy) = match name {
            "f1_sphere" => (BaseFunction::Sphere, -100.0, 100.0, false, false),
            "f2_schwefel12" => (BaseFunction::Schwefel12, -100.0, 100.0, false, false),
            "f3_elliptic_rot" => (BaseFunction::Elliptic, -100.0, 100.0, true, false),
            "f4_schwefel12_noise" => (BaseFunction::Schwefel12, -100.0, 100.0, false, true),
            "f6_rosenbrock" => (BaseFunction::Rosenbrock, -100.0, 100.0, false, false),
            "f7_griewank_rot_nobounds" => (BaseFunction::Griewank, 0.0, 600.0, true, false),
            "f8_ackley_rot" => (BaseFunction::Ackley, -32.0, 32.0, true, false),
            "f9_rastrigin" => (BaseFunction::Rastrigin, -5.0, 5.0, false, false),
            "f10_rastrigin_rot" => (BaseFunction::Rastrigin, -5.0, 5.0, true, false),
            "f11_weierstrass_rot" => (BaseFunction::Weierstrass, -0.5, 0.5, true, false),
            "f13_griewank_rosenbrock" => {
                (BaseFunction::GriewankRosenbrock, -3.0, 1.0, false, false)
            }
            "f14_scaffer_rot" => (BaseFunction::ScafferF6Expanded, -100.0, 100.0, true, false),
            _ => {
                return Err(Error::UnknownProblem {
                    name: name.to_string(),
                    valid: PROBLEM_NAMES.iter().map(|s| s.to_string()).collect(),
                })
            }
        };
        let mut problem = Problem::new(name, base, dim, T::from_f64(lo), T::from_f64(hi))?;
        let mut rng = RandomSource::new(data_seed);
        // optimum drawn from the central 80% of the search box so that it
        // stays interior for every base function
        let margin = T::from_f64(0.1) * (T::from_f64(hi) - T::from_f64(lo));
        let optimum: Vec<T> = (0..dim)
            .map(|_| rng.uniform(T::from_f64(lo) + margin, T::from_f64(hi) - margin))
            .collect();
        let shift = if base.minimum_at_origin() {
            optimum
        } else {
            // these bases attain their minimum at all-ones
            optimum.into_iter().map(|o| o - T::one()).collect()
        };
        problem = problem.with_shift(shift)?;
        if rotated {
            problem = problem.with_rotation(random_rotation(dim, &mut rng))?;
        }
        if noisy {
            problem = problem.with_noise(T::from_f64(0.4));
        }
        Ok(problem)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn base(&self) -> BaseFunction {
        self.base
    }

    pub fn search_bounds(&self) -> &[(T, T)] {
        &self.search_bounds
    }

    pub fn init_bounds(&self) -> &[(T, T)] {
        &self.init_bounds
    }

    pub fn shift(&self) -> Option<&[T]> {
        self.shift.as_deref()
    }

    pub fn rotation(&self) -> Option<&[Vec<T>]> {
        self.rotation.as_deref()
    }

    pub fn bias(&self) -> T {
        self.bias
    }

    pub fn bounds_enforced(&self) -> bool {
        self.bounds_enforced
    }

    pub fn is_noisy(&self) -> bool {
        self.noise_scale.is_some()
    }

    /// Applies the shift and rotation: `rotation * (x - shift)`.
    pub fn transform(&self, x: &[T]) -> Result<Vec<T>> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        Ok(self.transform_raw(x))
    }

    fn transform_raw(&self, x: &[T]) -> Vec<T> {
        let mut z: Vec<T> = match &self.shift {
            Some(o) => x.iter().zip(o).map(|(&xi, &oi)| xi - oi).collect(),
            None => x.to_vec(),
        };
        if let Some(rot) = &self.rotation {
            let mut out = vec![T::zero(); self.dim];
            for (row, o) in rot.iter().zip(out.iter_mut()) {
                *o = row.iter().zip(&z).map(|(&r, &zi)| r * zi).sum();
            }
            z = out;
        }
        z
    }

    /// Deterministic objective value at `x` (noise, if configured, is not
    /// applied here).
    pub fn evaluate(&self, x: &[T]) -> Result<T> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        Ok(self.base.evaluate(&self.transform_raw(x)) + self.bias)
    }

    /// Objective value as seen by a running swarm: applies the configured
    /// multiplicative noise using the run's random source.
    pub fn evaluate_sampled(&self, x: &[T], rng: &mut RandomSource) -> T {
        debug_assert_eq!(x.len(), self.dim);
        let raw = self.base.evaluate(&self.transform_raw(x));
        match self.noise_scale {
            Some(scale) => {
                let phi: T = rng.standard_normal();
                raw * (T::one() + scale * phi.abs()) + self.bias
            }
            None => raw + self.bias,
        }
    }
}

fn validate_bounds<T: Real>(bounds: &[(T, T)], dim: usize) -> Result<()> {
    if bounds.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: bounds.len(),
        });
    }
    for &(lo, hi) in bounds {
        if !(lo < hi) {
            return Err(Error::InvalidInput(format!(
                "bounds must satisfy lo < hi, got [{lo}, {hi}]"
            )));
        }
    }
    Ok(())
}

fn validate_rotation<T: Real>(rotation: &[Vec<T>], dim: usize) -> Result<()> {
    if rotation.len() != dim || rotation.iter().any(|row| row.len() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: rotation.len(),
        });
    }
    let dev = orthogonality_deviation(rotation);
    if dev.to_f64() > ORTHOGONALITY_TOL {
        return Err(Error::NotOrthogonal {
            max_deviation: dev.to_f64(),
        });
    }
    Ok(())
}

/// Largest elementwise deviation of `Q^T Q` from the identity.
pub fn orthogonality_deviation<T: Real>(q: &[Vec<T>]) -> T {
    let n = q.len();
    let mut max_dev = T::zero();
    for i in 0..n {
        for j in 0..n {
            let dot: T = (0..n).map(|k| q[k][i] * q[k][j]).sum();
            let target = if i == j { T::one() } else { T::zero() };
            max_dev = max_dev.max((dot - target).abs());
        }
    }
    max_dev
}

/// Random orthogonal matrix from Gram-Schmidt on standard-normal rows.
pub fn random_rotation<T: Real>(n: usize, rng: &mut RandomSource) -> Vec<Vec<T>> {
    assert!(n >= 1);
    let mut q: Vec<Vec<T>> = Vec::with_capacity(n);
    while q.len() < n {
        let mut v: Vec<T> = (0..n).map(|_| rng.standard_normal()).collect();
        // two projection passes keep the basis orthonormal to machine precision
        for _ in 0..2 {
            for prev in &q {
                let dot: T = v.iter().zip(prev).map(|(&a, &b)| a * b).sum();
                for (vi, &pi) in v.iter_mut().zip(prev) {
                    *vi -= dot * pi;
                }
            }
        }
        let norm = v.iter().map(|&a| a * a).sum::<T>().sqrt();
        if norm.to_f64() < 1e-8 {
            continue; // degenerate draw, resample the row
        }
        for vi in v.iter_mut() {
            *vi /= norm;
        }
        q.push(v);
    }
    q
}

/// Reads a shift vector, optionally followed by a rotation matrix, from a
/// whitespace-separated text file.
///
/// A file with exactly `n` numbers is a shift; a file with `n + n*n` numbers
/// is a shift followed by a row-major rotation matrix, which is validated to
/// be orthogonal.
pub fn load_problem_data<T: Real>(
    path: impl AsRef<std::path::Path>,
    n: usize,
) -> Result<(Vec<T>, Option<Vec<Vec<T>>>)> {
    let text = std::fs::read_to_string(path.as_ref())?;
    let mut values = Vec::new();
    for (pos, token) in text.split_whitespace().enumerate() {
        let v: f64 = token.parse().map_err(|_| {
            Error::Parse(format!(
                "invalid number '{token}' at position {} in {}",
                pos + 1,
                path.as_ref().display()
            ))
        })?;
        values.push(T::from_f64(v));
    }
    if values.len() == n {
        return Ok((values, None));
    }
    if values.len() == n + n * n {
        let shift = values[..n].to_vec();
        let rotation: Vec<Vec<T>> = values[n..].chunks(n).map(|c| c.to_vec()).collect();
        validate_rotation(&rotation, n)?;
        return Ok((shift, Some(rotation)));
    }
    Err(Error::DimensionMismatch {
        expected: if values.len() < n + n * n { n } else { n + n * n },
        got: values.len(),
    })
}

fn default_data_seed(name: &str, dim: usize) -> u64 {
    // FNV-1a over the name, mixed with the dimension: stable instances
    // across runs and experiments
    let mut h: u64 = 0xcbf29ce484222325;
    for b in name.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x100000001b3);
    }
    h ^ (dim as u64)
}
