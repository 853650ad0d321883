//! Multi-run summaries, Welch's unpaired t-test, and rank aggregation.
//!
//! Algorithms are ranked per problem by sorting their mean final values and
//! grouping adjacent entries whose difference is not significant at the 0.05
//! level; tied groups share the best rank of the group and the next group's
//! rank counts every preceding algorithm (competition ranking).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Final best values of one algorithm on one problem, one entry per run.
#[derive(Debug, Clone)]
pub struct ResultSample<T> {
    pub algorithm: String,
    pub problem: String,
    pub final_bests: Vec<T>,
}

impl<T: Real> ResultSample<T> {
    pub fn new(
        algorithm: impl Into<String>,
        problem: impl Into<String>,
        final_bests: Vec<T>,
    ) -> Self {
        Self {
            algorithm: algorithm.into(),
            problem: problem.into(),
            final_bests,
        }
    }

    pub fn runs(&self) -> usize {
        self.final_bests.len()
    }

    pub fn summarize(&self) -> Result<(T, T)> {
        mean_std(&self.final_bests)
    }
}

/// Arithmetic mean and sample standard deviation (divisor n - 1).
pub fn mean_std<T: Real>(values: &[T]) -> Result<(T, T)> {
    if values.len() < 2 {
        return Err(Error::NotEnoughSamples {
            needed: 2,
            got: values.len(),
        });
    }
    let n = T::from_usize(values.len());
    let mean = values.iter().copied().sum::<T>() / n;
    let ss = values
        .iter()
        .map(|&v| (v - mean) * (v - mean))
        .sum::<T>();
    Ok((mean, (ss / (n - T::one())).sqrt()))
}

/// Outcome of one unpaired two-sample test.
#[derive(Debug, Clone, Copy)]
pub struct TTest<T> {
    /// Absolute value of Welch's t statistic.
    pub t: T,
    /// Two-sided p-value.
    pub p: T,
    pub significant_at_05: bool,
}

/// Welch's unequal-variance t-test with Welch-Satterthwaite degrees of
/// freedom and a two-sided p-value.
pub fn unpaired_t<T: Real>(a: &[T], b: &[T]) -> Result<TTest<T>> {
    let (mean_a, std_a) = mean_std(a)?;
    let (mean_b, std_b) = mean_std(b)?;
    let na = T::from_usize(a.len());
    let nb = T::from_usize(b.len());
    let var_a = std_a * std_a / na;
    let var_b = std_b * std_b / nb;
    let se = (var_a + var_b).sqrt();
    if se == T::zero() {
        // both samples are constant: identical means are indistinguishable,
        // different means are separated with certainty
        return Ok(if mean_a == mean_b {
            TTest {
                t: T::zero(),
                p: T::one(),
                significant_at_05: false,
            }
        } else {
            TTest {
                t: T::infinity(),
                p: T::zero(),
                significant_at_05: true,
            }
        });
    }
    let t = ((mean_a - mean_b) / se).abs();
    let df = (var_a + var_b) * (var_a + var_b)
        / (var_a * var_a / (na - T::one()) + var_b * var_b / (nb - T::one()));
    let p = two_sided_p(t, df);
    Ok(TTest {
        t,
        p,
        significant_at_05: p < T::from_f64(0.05),
    })
}

/// Two-sided tail probability of Student's t at |t| with `df` degrees of
/// freedom: `I_{df/(df+t^2)}(df/2, 1/2)`.
pub fn two_sided_p<T: Real>(t: T, df: T) -> T {
    let t = t.abs();
    if t.is_infinite() {
        return T::zero();
    }
    let x = df / (df + t * t);
    regularized_incomplete_beta(df / T::from_f64(2.0), T::from_f64(0.5), x)
}

/// CDF of Student's t-distribution.
pub fn students_t_cdf<T: Real>(t: T, df: T) -> T {
    let half = T::from_f64(0.5);
    let tail = half * two_sided_p(t, df);
    if t >= T::zero() {
        T::one() - tail
    } else {
        tail
    }
}

/// Regularized incomplete beta function `I_x(a, b)` by the continued
/// fraction with Lentz's algorithm.
pub fn regularized_incomplete_beta<T: Real>(a: T, b: T, x: T) -> T {
    if x <= T::zero() {
        return T::zero();
    }
    if x >= T::one() {
        return T::one();
    }
    let front = (ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b)
        + a * x.ln()
        + b * (T::one() - x).ln())
    .exp();
    // the continued fraction converges fast for x < (a+1)/(a+b+2)
    if x < (a + T::one()) / (a + b + T::from_f64(2.0)) {
        front * beta_continued_fraction(a, b, x) / a
    } else {
        T::one() - front * beta_continued_fraction(b, a, T::one() - x) / b
    }
}

fn beta_continued_fraction<T: Real>(a: T, b: T, x: T) -> T {
    let eps = T::from_f64(1e-15);
    let tiny = T::from_f64(1e-300);
    let one = T::one();
    let two = T::from_f64(2.0);
    let qab = a + b;
    let qap = a + one;
    let qam = a - one;
    let mut c = one;
    let mut d = one - qab * x / qap;
    if d.abs() < tiny {
        d = tiny;
    }
    d = one / d;
    let mut h = d;
    for m in 1..=300 {
        let mf = T::from_usize(m);
        let m2 = two * mf;
        // even step
        let aa = mf * (b - mf) * x / ((qam + m2) * (a + m2));
        d = one + aa * d;
        if d.abs() < tiny {
            d = tiny;
        }
        c = one + aa / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = one / d;
        h = h * d * c;
        // odd step
        let aa = -(a + mf) * (qab + mf) * x / ((a + m2) * (qap + m2));
        d = one + aa * d;
        if d.abs() < tiny {
            d = tiny;
        }
        c = one + aa / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = one / d;
        let del = d * c;
        h *= del;
        if (del - one).abs() < eps {
            break;
        }
    }
    h
}

/// Log-gamma by the Lanczos approximation (g = 7, 9 terms).
pub fn ln_gamma<T: Real>(x: T) -> T {
    const COEFFS: [f64; 8] = [
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    ];
    let half = T::from_f64(0.5);
    let one = T::one();
    if x < half {
        // reflection
        let pi = T::PI();
        return (pi / (pi * x).sin()).ln() - ln_gamma(one - x);
    }
    let x = x - one;
    let mut acc = T::from_f64(0.99999999999980993);
    for (i, &c) in COEFFS.iter().enumerate() {
        acc += T::from_f64(c) / (x + T::from_usize(i + 1));
    }
    let t = x + T::from_f64(7.5);
    let ln_sqrt_two_pi = T::from_f64(0.9189385332046727);
    ln_sqrt_two_pi + (x + half) * t.ln() - t + acc.ln()
}

/// One algorithm's place within a single problem's ranking.
#[derive(Debug, Clone)]
pub struct RankEntry<T> {
    pub algorithm: String,
    pub mean: T,
    pub std: T,
    /// Competition rank; tied algorithms share the group's best rank.
    pub rank: usize,
}

/// The adjacent-pair test backing one boundary decision of the grouping.
#[derive(Debug, Clone)]
pub struct AdjacentTest<T> {
    pub algo_a: String,
    pub algo_b: String,
    pub t: T,
    pub p: T,
    pub significant: bool,
}

/// Ranking of all algorithms on one problem.
#[derive(Debug, Clone)]
pub struct ProblemRanking<T> {
    pub problem: String,
    pub entries: Vec<RankEntry<T>>,
    pub adjacent_tests: Vec<AdjacentTest<T>>,
}

/// Ranks the algorithms of one problem: sort by mean ascending, test each
/// adjacent pair, merge pairs that are not significantly different into one
/// tie group, and assign competition ranks.
pub fn rank_problem<T: Real>(samples: &[ResultSample<T>]) -> Result<ProblemRanking<T>> {
    if samples.len() < 2 {
        return Err(Error::NotEnoughSamples {
            needed: 2,
            got: samples.len(),
        });
    }
    let problem = samples[0].problem.clone();
    let mut order: Vec<usize> = (0..samples.len()).collect();
    let summaries: Vec<(T, T)> = samples
        .iter()
        .map(|s| s.summarize())
        .collect::<Result<_>>()?;
    order.sort_by(|&i, &j| {
        summaries[i]
            .0
            .partial_cmp(&summaries[j].0)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| samples[i].algorithm.cmp(&samples[j].algorithm))
    });

    let mut adjacent_tests = Vec::with_capacity(order.len() - 1);
    let mut group_of = vec![0usize; order.len()];
    let mut group = 0usize;
    for k in 1..order.len() {
        let prev = order[k - 1];
        let curr = order[k];
        let test = unpaired_t(&samples[prev].final_bests, &samples[curr].final_bests)?;
        adjacent_tests.push(AdjacentTest {
            algo_a: samples[prev].algorithm.clone(),
            algo_b: samples[curr].algorithm.clone(),
            t: test.t,
            p: test.p,
            significant: test.significant_at_05,
        });
        if test.significant_at_05 {
            group += 1;
        }
        group_of[k] = group;
    }

    // competition ranks: a group's rank is 1 + the number of algorithms in
    // earlier groups
    let mut rank_of_group = Vec::new();
    let mut assigned = 0usize;
    for g in 0..=group {
        rank_of_group.push(assigned + 1);
        assigned += group_of.iter().filter(|&&x| x == g).count();
    }

    let entries = order
        .iter()
        .enumerate()
        .map(|(k, &idx)| RankEntry {
            algorithm: samples[idx].algorithm.clone(),
            mean: summaries[idx].0,
            std: summaries[idx].1,
            rank: rank_of_group[group_of[k]],
        })
        .collect();
    Ok(ProblemRanking {
        problem,
        entries,
        adjacent_tests,
    })
}

/// Per-problem competition ranks for a set of algorithms.
#[derive(Debug, Clone, Default)]
pub struct RankTable {
    /// (algorithm, problem) -> rank.
    pub per_problem_ranks: BTreeMap<(String, String), usize>,
}

impl RankTable {
    pub fn insert(&mut self, algorithm: impl Into<String>, problem: impl Into<String>, rank: usize) {
        self.per_problem_ranks
            .insert((algorithm.into(), problem.into()), rank);
    }

    pub fn from_rankings<T: Real>(rankings: &[ProblemRanking<T>]) -> Self {
        let mut table = RankTable::default();
        for ranking in rankings {
            for entry in &ranking.entries {
                table.insert(entry.algorithm.clone(), ranking.problem.clone(), entry.rank);
            }
        }
        table
    }

    pub fn algorithms(&self) -> Vec<String> {
        let mut v: Vec<String> = self
            .per_problem_ranks
            .keys()
            .map(|(a, _)| a.clone())
            .collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn problems(&self) -> Vec<String> {
        let mut v: Vec<String> = self
            .per_problem_ranks
            .keys()
            .map(|(_, p)| p.clone())
            .collect();
        v.sort();
        v.dedup();
        v
    }

    /// Mean rank per algorithm across all problems; errors if any
    /// algorithm/problem cell is missing, listing the gaps.
    pub fn average_rank(&self) -> Result<BTreeMap<String, f64>> {
        let algorithms = self.algorithms();
        let problems = self.problems();
        let mut missing = Vec::new();
        let mut averages = BTreeMap::new();
        for algo in &algorithms {
            let mut total = 0usize;
            for problem in &problems {
                match self
                    .per_problem_ranks
                    .get(&(algo.clone(), problem.clone()))
                {
                    Some(&rank) => total += rank,
                    None => missing.push(format!("{algo}/{problem}")),
                }
            }
            averages.insert(algo.clone(), total as f64 / problems.len() as f64);
        }
        if missing.is_empty() {
            Ok(averages)
        } else {
            Err(Error::MissingCells(missing))
        }
    }
}
