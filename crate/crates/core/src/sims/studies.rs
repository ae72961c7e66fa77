//! Null-distribution, dependent-Bernoulli and power studies.
//!
//! Every study is a deterministic function of its arguments: replicate `k`
//! uses seeds derived from `(seed, k)` only, and aggregation happens after the
//! replicates are collected in index order.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Result, XiError};
use crate::inference::{self, NullVariance, Statistic, CONTINUOUS_TAU_SQUARED};
use crate::oracle::{self, GenerativeModel};
use crate::rng;
use crate::sims::scenario::{generate, ScenarioKind, ScenarioSpec};
use crate::sims::summary::{self, Histogram};
use crate::xi;

/// Size of the y sample used to estimate `tau^2` for the discrete null study.
pub const CALIBRATION_SAMPLE_SIZE: usize = 1_000_000;

pub const HISTOGRAM_BINS: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NullKind {
    /// X, Y independent U[0, 1].
    Uniform,
    /// X, Y independent Binomial(3, 1/2).
    Binomial,
}

impl FromStr for NullKind {
    type Err = XiError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(NullKind::Uniform),
            "binomial" | "binomial_3_half" => Ok(NullKind::Binomial),
            other => Err(XiError::Domain(format!("unknown null model '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NullStudy {
    pub y_kind: NullKind,
    pub n: usize,
    pub reps: usize,
    pub seed: u64,
    /// Reference variance of `sqrt(n) xi_n`.
    pub tau_squared: f64,
    /// Size of the sample `tau_squared` was estimated from; absent when it is 2/5.
    pub calibration_n: Option<usize>,
    /// Mean of `sqrt(n) xi_n`.
    pub mean: f64,
    /// Sample variance of `sqrt(n) xi_n`.
    pub variance: f64,
    /// KS distance between `sqrt(n) xi_n` and `N(0, tau_squared)`.
    pub ks_distance: f64,
    /// Empirical 95th percentile of `xi_n`.
    pub xi_q95: f64,
    pub histogram: Histogram,
}

/// Simulates `sqrt(n) xi_n` under independence and compares it with its normal limit.
///
/// For the binomial model the limit variance is `tau_squared_hat` on
/// [`CALIBRATION_SAMPLE_SIZE`] fresh draws of Y.
pub fn null_distribution_study(
    y_kind: NullKind,
    n: usize,
    reps: usize,
    seed: u64,
) -> Result<NullStudy> {
    if reps < 2 {
        return Err(XiError::Domain("reps must be at least 2".into()));
    }
    let kind = match y_kind {
        NullKind::Uniform => ScenarioKind::IndependentUniform,
        NullKind::Binomial => ScenarioKind::IndependentBinomial,
    };
    let (tau_squared, calibration_n) = match y_kind {
        NullKind::Uniform => (CONTINUOUS_TAU_SQUARED, None),
        NullKind::Binomial => {
            let spec = ScenarioSpec::new(kind, 0.0, CALIBRATION_SAMPLE_SIZE)?;
            let calib = generate(&spec, rng::derive_seed(seed, u64::MAX))?;
            let tau = inference::tau_squared_hat(calib.ys())?.value;
            (tau, Some(CALIBRATION_SAMPLE_SIZE))
        }
    };
    let spec = ScenarioSpec::new(kind, 0.0, n)?;
    let xis = oracle::xi_replicates(&spec, n, reps, seed)?;
    let root_n = (n as f64).sqrt();
    let scaled: Vec<f64> = xis.iter().map(|v| root_n * v).collect();
    let (mean, variance) = summary::mean_variance(&scaled);
    let half_width = 4.0 * tau_squared.sqrt();
    Ok(NullStudy {
        y_kind,
        n,
        reps,
        seed,
        tau_squared,
        calibration_n,
        mean,
        variance,
        ks_distance: summary::ks_distance_normal(&scaled, tau_squared),
        xi_q95: quantile(&xis, 0.95),
        histogram: summary::histogram(&scaled, -half_width, half_width, HISTOGRAM_BINS, tau_squared),
    })
}

/// Empirical quantile by linear interpolation between order statistics.
fn quantile(values: &[f64], q: f64) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (pos - lo as f64) * (sorted[hi] - sorted[lo])
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BernoulliStudy {
    pub p: f64,
    pub p_prime: f64,
    pub n: usize,
    pub reps: usize,
    pub seed: u64,
    /// `p'(1 - p) / (1 - p p')`.
    pub population: f64,
    pub mean: f64,
    pub sd: f64,
}

/// Moments of `xi_n` under `X ~ Bernoulli(p)`, `Y = X Z`, `Z ~ Bernoulli(p')`.
pub fn bernoulli_dependence_study(
    p: f64,
    p_prime: f64,
    n: usize,
    reps: usize,
    seed: u64,
) -> Result<BernoulliStudy> {
    if reps < 2 {
        return Err(XiError::Domain("reps must be at least 2".into()));
    }
    let population = xi::population_xi_bernoulli_product(p, p_prime)?;
    let spec = ScenarioSpec::bernoulli_product(p, p_prime, n)?;
    let values = oracle::xi_replicates(&spec, n, reps, seed)?;
    let (mean, sd) = xi::mean_sd(&values);
    Ok(BernoulliStudy {
        p,
        p_prime,
        n,
        reps,
        seed,
        population,
        mean,
        sd,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum PowerTest {
    /// Asymptotic test with the continuous null variance 2/5.
    AsymptoticContinuous,
    /// Permutation test of `xi_n(X, Y)`.
    Permutation { n_permutations: usize },
}

impl fmt::Display for PowerTest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PowerTest::AsymptoticContinuous => f.write_str("asymptotic_continuous"),
            PowerTest::Permutation { n_permutations } => write!(f, "permutation({n_permutations})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowerPoint {
    pub lambda: f64,
    pub rejections: usize,
    pub rate: f64,
    /// Binomial standard error `sqrt(rate (1 - rate) / reps)`.
    pub stderr: f64,
    pub mean_xi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowerCurve {
    pub scenario: ScenarioKind,
    pub n: usize,
    pub reps: usize,
    pub alpha: f64,
    pub test: PowerTest,
    pub seed: u64,
    pub points: Vec<PowerPoint>,
}

/// Rejection rate of the chosen test at each noise level.
///
/// Replicate `k` uses data seed `derive_seed(seed, k)` at every `lambda`, so
/// neighbouring noise levels share their X draws and noise deviates. A
/// replicate rejects when `p <= alpha`.
pub fn power_curve(
    kind: ScenarioKind,
    lambda_grid: &[f64],
    n: usize,
    reps: usize,
    alpha: f64,
    test: PowerTest,
    seed: u64,
) -> Result<PowerCurve> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(XiError::Domain(format!("alpha = {alpha} is outside (0, 1)")));
    }
    if reps == 0 || lambda_grid.is_empty() {
        return Err(XiError::Domain("reps and the lambda grid must be non-empty".into()));
    }
    if lambda_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(XiError::Domain("lambda grid must be strictly increasing".into()));
    }
    let mut points = Vec::with_capacity(lambda_grid.len());
    for &lambda in lambda_grid {
        let spec = ScenarioSpec::new(kind, lambda, n)?;
        let outcomes = (0..reps as u64)
            .into_par_iter()
            .map(|k| {
                let data_seed = rng::derive_seed(seed, k);
                let sample = spec.sample(n, data_seed)?;
                let test_seed = rng::derive_seed(data_seed, 1);
                let result = match test {
                    PowerTest::AsymptoticContinuous => inference::test_asymptotic(
                        &sample,
                        NullVariance::ForceContinuous,
                        test_seed,
                    )?,
                    PowerTest::Permutation { n_permutations } => inference::test_permutation(
                        &sample,
                        Statistic::Xi,
                        n_permutations,
                        test_seed,
                    )?,
                };
                Ok((result.p_value <= alpha, result.statistic))
            })
            .collect::<Result<Vec<(bool, f64)>>>()?;
        let rejections = outcomes.iter().filter(|(r, _)| *r).count();
        let rate = rejections as f64 / reps as f64;
        let mean_xi = outcomes.iter().map(|(_, s)| s).sum::<f64>() / reps as f64;
        points.push(PowerPoint {
            lambda,
            rejections,
            rate,
            stderr: (rate * (1.0 - rate) / reps as f64).sqrt(),
            mean_xi,
        });
    }
    Ok(PowerCurve {
        scenario: kind,
        n,
        reps,
        alpha,
        test,
        seed,
        points,
    })
}
