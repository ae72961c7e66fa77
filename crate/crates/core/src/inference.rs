//! Null distribution theory for xi_n and the tests built on it.
//!
//! Under independence `sqrt(n) * xi_n` is asymptotically `N(0, tau^2)`, with
//! `tau^2 = 2/5` when Y is continuous. For general Y, `tau^2` is estimated from
//! the sorted right-ranks `u`, their prefix sums `v` and the left-ranks `L`:
//!
//! ```text
//! a = n^-4 sum (2n - 2i + 1) u_i^2        b = n^-5 sum (v_i + (n - i) u_i)^2
//! c = n^-3 sum (2n - 2i + 1) u_i          d = n^-3 sum L(i) (n - L(i))
//! tau_hat^2 = (a - 2b + c^2) / d^2
//! ```
//!
//! With `A`, `B`, `C`, `D` the bare integer sums this is exactly
//! `(n^2 A - 2n B + C^2) / D^2`, which is what [`tau_squared_hat`] evaluates.
//!
//! All p-values are right-tailed: only large positive xi_n is evidence of
//! dependence.

use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Result, XiError};
use crate::ranks;
use crate::rng;
use crate::sample::{has_ties, is_constant, PairedSample};
use crate::xi::{self, XiRatio};

/// Null variance of `sqrt(n) xi_n` for continuous Y.
pub const CONTINUOUS_TAU_SQUARED: f64 = 0.4;

/// Estimates at or below this are reported as [`XiError::VarianceDegenerate`].
pub const VARIANCE_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TestMethod {
    AsymptoticContinuous,
    AsymptoticGeneral,
    Permutation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Statistic {
    Xi,
    XiSymmetrized,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TestResult {
    pub statistic: f64,
    pub n: usize,
    /// The `tau^2` used for `z`: 2/5, or the estimate from the y column.
    pub variance: f64,
    /// `sqrt(n) * statistic / sqrt(variance)`.
    pub z: f64,
    pub p_value: f64,
    pub method: TestMethod,
    pub n_permutations: Option<usize>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TauSquaredEstimate {
    pub value: f64,
    pub a_n: f64,
    pub b_n: f64,
    pub c_n: f64,
    pub d_n: f64,
}

/// Standard normal CDF, computed as `erfc(-z / sqrt 2) / 2` with the musl
/// `erfc` from the `libm` crate (error below one ulp, including the tails).
pub fn normal_cdf(z: f64) -> f64 {
    0.5 * libm::erfc(-z / std::f64::consts::SQRT_2)
}

/// Right-tail probability `1 - Phi(z)`, without cancellation for large `z`.
pub fn normal_sf(z: f64) -> f64 {
    normal_cdf(-z)
}

/// Estimator of the null variance of `sqrt(n) xi_n`, from the y column alone. O(n log n).
pub fn tau_squared_hat(ys: &[f64]) -> Result<TauSquaredEstimate> {
    if ys.len() < 2 {
        return Err(XiError::SampleTooSmall(ys.len()));
    }
    let g = ranks::global_y_ranks(ys);
    let n = ys.len();
    let d_sum = xi::tie_denominator(&g.l);
    if d_sum == 0 {
        return Err(XiError::ConstantY);
    }

    let mut u = g.r;
    u.sort_unstable();
    let (mut a_sum, mut b_sum, mut c_sum) = (0u128, 0u128, 0u128);
    let mut v = 0u128;
    let nn = n as u128;
    for (k, &ui) in u.iter().enumerate() {
        let i = k as u128 + 1;
        let ui = ui as u128;
        let w = 2 * nn - 2 * i + 1;
        v += ui;
        a_sum += w * ui * ui;
        let t = v + (nn - i) * ui;
        b_sum += t * t;
        c_sum += w * ui;
    }

    let nf = n as f64;
    let a_n = a_sum as f64 / nf.powi(4);
    let b_n = b_sum as f64 / nf.powi(5);
    let c_n = c_sum as f64 / nf.powi(3);
    let d_n = d_sum as f64 / nf.powi(3);

    let value = match exact_tau_numerator(nn, a_sum, b_sum, c_sum) {
        Some(num) => num as f64 / (d_sum as f64).powi(2),
        // Only reachable for n in the millions; fall back to the scaled form.
        None => (a_n - 2.0 * b_n + c_n * c_n) / (d_n * d_n),
    };
    Ok(TauSquaredEstimate {
        value,
        a_n,
        b_n,
        c_n,
        d_n,
    })
}

/// `n^2 A - 2n B + C^2` in checked integer arithmetic.
fn exact_tau_numerator(n: u128, a: u128, b: u128, c: u128) -> Option<i128> {
    let pos = n.checked_mul(n)?.checked_mul(a)?.checked_add(c.checked_mul(c)?)?;
    let neg = n.checked_mul(2)?.checked_mul(b)?;
    i128::try_from(pos).ok()?.checked_sub(i128::try_from(neg).ok()?)
}

/// How the null variance is chosen for the asymptotic test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NullVariance {
    /// `tau^2 = 2/5`; refused when the y column has ties.
    Continuous,
    /// `tau^2 = 2/5` even when the y column has ties.
    ForceContinuous,
    /// `tau^2` from [`tau_squared_hat`].
    Estimated,
}

/// Asymptotic normal test of independence based on `xi_n(X, Y)`.
pub fn test_asymptotic(
    sample: &PairedSample,
    variance: NullVariance,
    seed: u64,
) -> Result<TestResult> {
    let stat = xi::xi(sample, seed)?;
    let (tau2, method) = match variance {
        NullVariance::Continuous if has_ties(sample.ys()) => {
            return Err(XiError::TiedContinuousY)
        }
        NullVariance::Continuous | NullVariance::ForceContinuous => {
            (CONTINUOUS_TAU_SQUARED, TestMethod::AsymptoticContinuous)
        }
        NullVariance::Estimated => (
            checked_variance(tau_squared_hat(sample.ys())?.value)?,
            TestMethod::AsymptoticGeneral,
        ),
    };
    let z = z_score(stat.value, sample.len(), tau2);
    Ok(TestResult {
        statistic: stat.value,
        n: sample.len(),
        variance: tau2,
        z,
        p_value: normal_sf(z),
        method,
        n_permutations: None,
        seed: Some(seed),
    })
}

fn checked_variance(v: f64) -> Result<f64> {
    if v <= VARIANCE_FLOOR {
        Err(XiError::VarianceDegenerate(v))
    } else {
        Ok(v)
    }
}

fn z_score(statistic: f64, n: usize, tau2: f64) -> f64 {
    (n as f64).sqrt() * statistic / tau2.sqrt()
}

/// Add-one permutation p-value `(1 + hits) / (n_permutations + 1)`.
pub fn permutation_p_value(hits: usize, n_permutations: usize) -> f64 {
    (1 + hits) as f64 / (n_permutations + 1) as f64
}

/// Permutation test of independence.
///
/// Replicate `k` shuffles the y column against the x column with the stream
/// `derive_seed(seed, k)`. The observed statistic uses `seed` for its tie
/// breaks. The reported `variance` and `z` use [`tau_squared_hat`] on the y
/// column and are informational; the p-value is the add-one permutation
/// frequency of replicates at least as large as the observed statistic.
pub fn test_permutation(
    sample: &PairedSample,
    statistic: Statistic,
    n_permutations: usize,
    seed: u64,
) -> Result<TestResult> {
    if n_permutations == 0 {
        return Err(XiError::Domain("n_permutations must be at least 1".into()));
    }
    if is_constant(sample.ys()) {
        return Err(XiError::ConstantY);
    }
    let (observed, hits) = match statistic {
        Statistic::Xi => permutation_hits_xi(sample, n_permutations, seed)?,
        Statistic::XiSymmetrized => permutation_hits_symmetrized(sample, n_permutations, seed)?,
    };
    let tau2 = checked_variance(tau_squared_hat(sample.ys())?.value)?;
    let z = z_score(observed, sample.len(), tau2);
    Ok(TestResult {
        statistic: observed,
        n: sample.len(),
        variance: tau2,
        z,
        p_value: permutation_p_value(hits, n_permutations),
        method: TestMethod::Permutation,
        n_permutations: Some(n_permutations),
        seed: Some(seed),
    })
}

/// For `xi_n(X, Y)` a permutation of the y column only permutes the global
/// Y-ranks along the fixed X-arrangement, and the denominator is invariant.
/// A replicate is therefore a shuffle of the rank vector, and "at least as
/// large" is "no more total rank jumps".
fn permutation_hits_xi(sample: &PairedSample, b: usize, seed: u64) -> Result<(f64, usize)> {
    let profile = ranks::rank_profile(sample, seed);
    let observed = xi::xi_from_profile(&profile)?;
    let observed_jumps = xi::rank_jumps(&profile.r);
    let r = profile.r;
    let hits = (0..b as u64)
        .into_par_iter()
        .map_init(
            || r.clone(),
            |buf, k| {
                buf.copy_from_slice(&r);
                buf.shuffle(&mut rng::stream(rng::derive_seed(seed, k)));
                usize::from(xi::rank_jumps(buf) <= observed_jumps)
            },
        )
        .sum();
    Ok((observed.value, hits))
}

fn permutation_hits_symmetrized(
    sample: &PairedSample,
    b: usize,
    seed: u64,
) -> Result<(f64, usize)> {
    let observed = xi::xi_symmetrized(sample, seed)?;
    let observed_exact = max_exact(&observed);
    let hits = (0..b as u64)
        .into_par_iter()
        .map(|k| -> Result<usize> {
            let k_seed = rng::derive_seed(seed, k);
            let mut ys = sample.ys().to_vec();
            ys.shuffle(&mut rng::stream(k_seed));
            let permuted = sample.with_ys(ys)?;
            let stat = xi::xi_symmetrized(&permuted, rng::derive_seed(k_seed, 2))?;
            Ok(usize::from(max_exact(&stat) >= observed_exact))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .sum();
    Ok((observed.value, hits))
}

fn max_exact(s: &xi::SymmetrizedXi) -> XiRatio {
    s.forward.exact().max(s.backward.exact())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn sample(xs: &[f64], ys: &[f64]) -> PairedSample {
        PairedSample::new(xs.to_vec(), ys.to_vec()).unwrap()
    }

    #[test]
    fn normal_cdf_reference_points() {
        assert_eq!(normal_cdf(0.0), 0.5);
        assert!((normal_cdf(1.644_853_626_951_472_2) - 0.95).abs() < 1e-12);
        assert!(normal_cdf(-10.0) < 1e-20);
        assert!(normal_cdf(-10.0) > 0.0);
        for z in [-6.0, -2.5, -0.3, 0.7, 3.1] {
            assert_relative_eq!(normal_cdf(-z), 1.0 - normal_cdf(z), max_relative = 1e-14);
        }
    }

    #[test]
    fn tau_hat_two_points() {
        let t = tau_squared_hat(&[1.0, 2.0]).unwrap();
        assert_relative_eq!(t.a_n, 7.0 / 16.0);
        assert_relative_eq!(t.b_n, 13.0 / 32.0);
        assert_relative_eq!(t.c_n, 5.0 / 8.0);
        assert_relative_eq!(t.d_n, 1.0 / 8.0);
        assert_eq!(t.value, 1.0);
    }

    #[test]
    fn tau_hat_constant_y() {
        assert_eq!(tau_squared_hat(&[5.0, 5.0, 5.0]), Err(XiError::ConstantY));
    }

    #[test]
    fn zero_statistic_has_half_p_value() {
        let s = sample(&[1.0, 2.0], &[1.0, 2.0]);
        let t = test_asymptotic(&s, NullVariance::Continuous, 0).unwrap();
        assert_eq!(t.statistic, 0.0);
        assert_eq!(t.p_value, 0.5);
        assert_eq!(t.variance, CONTINUOUS_TAU_SQUARED);
        assert_eq!(t.method, TestMethod::AsymptoticContinuous);
    }

    #[test]
    fn p_value_at_the_five_percent_quantile() {
        let xi_n = 1.644_853_626_951_472_2 * (0.4f64 / 100.0).sqrt();
        let z = z_score(xi_n, 100, CONTINUOUS_TAU_SQUARED);
        assert!((normal_sf(z) - 0.05).abs() < 1e-12);
    }

    #[test]
    fn continuous_declaration_refuses_ties() {
        let s = sample(&[1.0, 2.0, 3.0], &[1.0, 1.0, 2.0]);
        assert_eq!(
            test_asymptotic(&s, NullVariance::Continuous, 0),
            Err(XiError::TiedContinuousY)
        );
        let forced = test_asymptotic(&s, NullVariance::ForceContinuous, 0).unwrap();
        assert_eq!(forced.variance, CONTINUOUS_TAU_SQUARED);
        let est = test_asymptotic(&s, NullVariance::Estimated, 0).unwrap();
        assert_eq!(est.method, TestMethod::AsymptoticGeneral);
    }

    #[test]
    fn permutation_counting_formula() {
        assert_eq!(permutation_p_value(0, 199), 0.005);
        assert_eq!(permutation_p_value(199, 199), 1.0);
    }

    #[test]
    fn permutation_test_rejects_zero_permutations() {
        let s = sample(&[1.0, 2.0, 3.0], &[1.0, 3.0, 2.0]);
        assert!(test_permutation(&s, Statistic::Xi, 0, 0).is_err());
    }
}
