//! Reference checks for the statistics module: frozen values from an
//! independent statistics package, a CDF comparison against `statrs`, and
//! the grouping behavior on synthetic benchmark-style samples.

use rdpso_core::stats::{
    mean_std, rank_problem, students_t_cdf, unpaired_t, RankTable, ResultSample,
};
use rdpso_core::RandomSource;
use statrs::distribution::{ContinuousCDF, StudentsT};

// Two 30-point normal samples (mu=0, sigma=1 and mu=0.5, sigma=1.5),
// frozen together with the Welch test result computed by an independent
// statistics package.
const SAMPLE_A: [f64; 30] = [
    0.760577, -0.264283, -0.142356, 0.477986, 0.137419, -1.096139, -0.658008, 0.105337,
    -0.033552, 0.708215, 0.496781, -1.168648, -0.325258, -0.572252, 0.78886, 0.027658, 0.04772,
    0.776234, 0.658251, 0.035138, -0.086208, -1.54163, -0.430191, 0.204644, 0.223186, -0.724751,
    -0.685197, 1.096487, -0.044882, -2.287509,
];
const SAMPLE_B: [f64; 30] = [
    0.796465, 0.676529, 0.084419, -0.581042, 1.451584, -2.570921, 1.575785, 1.432954, 2.500995,
    1.42539, 1.030225, -0.684752, 1.54804, -0.936168, 0.564912, -0.284192, -0.27629, -1.636094,
    1.658545, 1.611221, -1.055008, -0.766949, 1.330859, 0.229182, -3.530098, 2.363841, -2.413533,
    1.232677, -1.072027, -0.26579,
];
const REFERENCE_T: f64 = 0.9732094402219132;
const REFERENCE_P: f64 = 0.3359282376148899;

#[test]
fn welch_matches_the_reference_implementation_on_frozen_samples() {
    let test = unpaired_t(&SAMPLE_A, &SAMPLE_B).unwrap();
    assert!(
        (test.t - REFERENCE_T).abs() < 1e-6,
        "t = {}, reference {REFERENCE_T}",
        test.t
    );
    assert!(
        (test.p - REFERENCE_P).abs() < 1e-6,
        "p = {}, reference {REFERENCE_P}",
        test.p
    );
    assert!(!test.significant_at_05);

    let (mean_a, std_a) = mean_std(&SAMPLE_A).unwrap();
    assert!((mean_a - (-0.11721236666666666)).abs() < 1e-12);
    assert!((std_a - 0.7532192034073153).abs() < 1e-12);
}

#[test]
fn t_cdf_tracks_statrs_to_1e10() {
    for df in [1.0, 2.0, 3.0, 5.0, 10.0, 30.0, 42.7168, 100.0, 200.0] {
        let reference = StudentsT::new(0.0, 1.0, df).unwrap();
        for t in [-10.0, -5.0, -2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 5.0, 10.0] {
            let ours = students_t_cdf(t, df);
            let theirs = reference.cdf(t);
            assert!(
                (ours - theirs).abs() < 1e-10,
                "cdf({t}, {df}): {ours} vs {theirs}"
            );
        }
    }
}

#[test]
fn welch_p_value_agrees_with_statrs_distribution() {
    let mut rng = RandomSource::new(88);
    let a: Vec<f64> = (0..25).map(|_| rng.uniform(0.0, 1.0)).collect();
    let b: Vec<f64> = (0..20).map(|_| 0.3 + 1.7 * rng.uniform::<f64>(0.0, 1.0)).collect();
    let test = unpaired_t(&a, &b).unwrap();
    // recompute the two-sided p from the statrs CDF at our t and df
    let (mean_a, std_a) = mean_std(&a).unwrap();
    let (mean_b, std_b) = mean_std(&b).unwrap();
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (va, vb) = (std_a * std_a / na, std_b * std_b / nb);
    let t = ((mean_a - mean_b) / (va + vb).sqrt()).abs();
    let df = (va + vb).powi(2) / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
    let reference = StudentsT::new(0.0, 1.0, df).unwrap();
    let p_ref = 2.0 * (1.0 - reference.cdf(t));
    assert!((test.t - t).abs() < 1e-12);
    assert!((test.p - p_ref).abs() < 1e-10, "{} vs {p_ref}", test.p);
}

#[test]
fn synthetic_benchmark_pair_with_overlapping_spreads_ties_at_rank_one() {
    // means/stds of two algorithms whose reported difference is not
    // significant over 100 runs (t about 1.5); regenerated as normal samples
    let mut rng = RandomSource::new(61);
    let sample = |mu: f64, sigma: f64, rng: &mut RandomSource| -> Vec<f64> {
        (0..100)
            .map(|_| mu + sigma * rng.standard_normal::<f64>())
            .collect()
    };
    let lbest = ResultSample::new("rdpso-lbest", "f6", sample(19.5009, 16.7704, &mut rng));
    let lbest_rp = ResultSample::new("rdpso-lbest-rp", "f6", sample(24.0065, 24.4861, &mut rng));
    let ranking = rank_problem(&[lbest, lbest_rp]).unwrap();
    for entry in &ranking.entries {
        assert_eq!(entry.rank, 1, "{} should tie at rank 1", entry.algorithm);
    }
    assert_eq!(ranking.adjacent_tests.len(), 1);
    assert!(!ranking.adjacent_tests[0].significant);
}

#[test]
fn rank_table_round_trips_through_average() {
    let mut table = RankTable::default();
    // two problems, three algorithms, fully covered
    for (algo, ranks) in [("a", [1, 2]), ("b", [2, 1]), ("c", [3, 3])] {
        table.insert(algo, "p1", ranks[0]);
        table.insert(algo, "p2", ranks[1]);
    }
    let avg = table.average_rank().unwrap();
    assert_eq!(avg["a"], 1.5);
    assert_eq!(avg["b"], 1.5);
    assert_eq!(avg["c"], 3.0);
}
