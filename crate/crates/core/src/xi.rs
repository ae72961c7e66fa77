//! The xi rank correlation coefficient.
//!
//! With the data arranged so that x increases, and `r`, `l` the Y-rank counts
//! from [`crate::ranks`],
//!
//! ```text
//! xi_n = 1 - n * sum_i |r[i+1] - r[i]| / (2 * sum_i l[i] * (n - l[i]))
//! ```
//!
//! When Y has no ties the denominator equals `n(n^2 - 1)/3` and the expression
//! is `1 - 3 * sum |r[i+1] - r[i]| / (n^2 - 1)`. Only the general form is
//! evaluated; the no-tie case is detected for reporting. Both sums are exact
//! integers and the result is kept as a reduced fraction, so the floating
//! point value is a single correctly-ordered division of that fraction.

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Result, XiError};
use crate::ranks::{self, RankProfile};
use crate::rng;
use crate::sample::{is_constant, PairedSample};

/// Exact value of the coefficient.
pub type XiRatio = Ratio<i128>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Formula {
    /// Y had no ties, so the value coincides with `1 - 3 sum|dr| / (n^2 - 1)`.
    NoTie,
    General,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct XiResult {
    pub value: f64,
    pub n: usize,
    pub x_had_ties: bool,
    pub y_had_ties: bool,
    pub seed_used: Option<u64>,
    pub formula: Formula,
    #[serde(skip)]
    exact: XiRatio,
}

impl XiResult {
    pub fn exact(&self) -> XiRatio {
        self.exact
    }
}

/// `sum_i |r[i+1] - r[i]|`.
pub fn rank_jumps(r: &[usize]) -> u128 {
    r.windows(2).map(|w| w[0].abs_diff(w[1]) as u128).sum()
}

/// `sum_i l[i] * (n - l[i])`; zero exactly when Y is constant.
pub fn tie_denominator(l: &[usize]) -> u128 {
    let n = l.len() as u128;
    l.iter().map(|&li| li as u128 * (n - li as u128)).sum()
}

/// `1 - n * jumps / (2 * denominator)` as a reduced fraction. `denominator` must be positive.
pub fn xi_ratio(n: usize, jumps: u128, denominator: u128) -> XiRatio {
    debug_assert!(denominator > 0);
    let num = i128::try_from(n as u128 * jumps).expect("xi numerator overflows i128");
    let den = i128::try_from(2 * denominator).expect("xi denominator overflows i128");
    XiRatio::from_integer(1) - XiRatio::new(num, den)
}

/// The no-tie expression `1 - 3 * jumps / (n^2 - 1)`, valid only when Y has no ties.
pub fn xi_ratio_no_tie(r: &[usize]) -> XiRatio {
    let n = r.len() as i128;
    let jumps = rank_jumps(r) as i128;
    XiRatio::from_integer(1) - XiRatio::new(3 * jumps, n * n - 1)
}

/// Quotient of the reduced numerator and denominator. Correctly rounded while
/// both are below 2^53 (n up to about 10^5); deterministic beyond that.
pub(crate) fn ratio_to_f64(r: &XiRatio) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Y has ties iff `sum r` exceeds `n(n+1)/2`: every tied pair is counted twice.
fn ranks_have_ties(r: &[usize]) -> bool {
    let n = r.len() as u128;
    r.iter().map(|&v| v as u128).sum::<u128>() > n * (n + 1) / 2
}

/// Evaluates the coefficient on an already computed rank profile.
pub fn xi_from_profile(profile: &RankProfile) -> Result<XiResult> {
    let n = profile.r.len();
    let denominator = tie_denominator(&profile.l);
    if denominator == 0 {
        return Err(XiError::ConstantY);
    }
    let exact = xi_ratio(n, rank_jumps(&profile.r), denominator);
    let y_had_ties = ranks_have_ties(&profile.r);
    Ok(XiResult {
        value: ratio_to_f64(&exact),
        n,
        x_had_ties: profile.seed_used.is_some(),
        y_had_ties,
        seed_used: profile.seed_used,
        formula: if y_had_ties {
            Formula::General
        } else {
            Formula::NoTie
        },
        exact,
    })
}

/// `xi_n(X, Y)`, breaking X ties with the stream keyed by `seed`.
pub fn xi(sample: &PairedSample, seed: u64) -> Result<XiResult> {
    if is_constant(sample.ys()) {
        return Err(XiError::ConstantY);
    }
    xi_from_profile(&ranks::rank_profile(sample, seed))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymmetrizedXi {
    /// `max(forward, backward)`.
    pub value: f64,
    /// `xi_n(X, Y)` with tie-break seed `seed`.
    pub forward: XiResult,
    /// `xi_n(Y, X)` with tie-break seed `derive_seed(seed, 1)`.
    pub backward: XiResult,
}

/// `max(xi_n(X, Y), xi_n(Y, X))`.
///
/// The forward direction uses `seed` itself, so `value >= xi(sample, seed)`
/// holds exactly; the backward direction uses an independent derived stream.
pub fn xi_symmetrized(sample: &PairedSample, seed: u64) -> Result<SymmetrizedXi> {
    if is_constant(sample.xs()) {
        return Err(XiError::ConstantX);
    }
    let forward = xi(sample, seed)?;
    let backward = xi(&sample.swapped(), rng::derive_seed(seed, 1))?;
    let value = if backward.exact > forward.exact {
        backward.value
    } else {
        forward.value
    };
    Ok(SymmetrizedXi {
        value,
        forward,
        backward,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TieAverage {
    pub mean: f64,
    /// Sample standard deviation across draws (zero for a single draw).
    pub sd: f64,
    pub n_draws: usize,
}

/// Monte Carlo average of `xi_n` over random X tie-breaks.
///
/// Draw `d` uses seed `derive_seed(seed, d)`. Without X ties there is nothing
/// to average and the result is `(xi(sample, seed), 0)`.
pub fn xi_tie_averaged(sample: &PairedSample, n_draws: usize, seed: u64) -> Result<TieAverage> {
    if n_draws == 0 {
        return Err(XiError::Domain("n_draws must be at least 1".into()));
    }
    let first = xi(sample, seed)?;
    if !first.x_had_ties {
        return Ok(TieAverage {
            mean: first.value,
            sd: 0.0,
            n_draws,
        });
    }
    // Y ranks depend only on the arrangement, so one global ranking suffices
    // for every draw.
    let ys = sample.ys();
    let global = ranks::global_y_ranks(ys);
    let denominator = tie_denominator(&global.l);
    let n = sample.len();
    let values: Vec<f64> = (0..n_draws as u64)
        .into_par_iter()
        .map(|d| {
            let order = ranks::x_order(sample, rng::derive_seed(seed, d));
            let r: Vec<usize> = order.order.iter().map(|&i| global.r[i]).collect();
            ratio_to_f64(&xi_ratio(n, rank_jumps(&r), denominator))
        })
        .collect();
    let (mean, sd) = mean_sd(&values);
    Ok(TieAverage { mean, sd, n_draws })
}

/// Mean and sample standard deviation (`n - 1` denominator; 0 for one value).
pub(crate) fn mean_sd(values: &[f64]) -> (f64, f64) {
    let k = values.len() as f64;
    let mean = values.iter().sum::<f64>() / k;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let ss: f64 = values.iter().map(|v| (v - mean).powi(2)).sum();
    (mean, (ss / (k - 1.0)).sqrt())
}

/// Population value of xi for `X ~ Bernoulli(p)`, `Y = X * Z`, `Z ~ Bernoulli(p')`
/// independent of X: `p'(1 - p) / (1 - p p')`.
pub fn population_xi_bernoulli_product(p: f64, p_prime: f64) -> Result<f64> {
    let open_unit = |v: f64| v > 0.0 && v < 1.0;
    if !open_unit(p) || !open_unit(p_prime) {
        return Err(XiError::Domain(format!(
            "p = {p} and p' = {p_prime} must both lie in (0, 1)"
        )));
    }
    // Numerator and denominator carried as unevaluated sums hi + lo, so the
    // quotient is rounded once: (0.4, 0.5) gives 0.375 exactly.
    let (one_minus_p, om_lo) = two_sum(1.0, -p);
    let (num, num_lo) = two_prod(p_prime, one_minus_p);
    let num_lo = num_lo + p_prime * om_lo;
    let (pp, pp_lo) = two_prod(p, p_prime);
    let (den, den_lo) = two_sum(1.0, -pp);
    let den_lo = den_lo - pp_lo;
    let q = num / den;
    let residual = (-q).mul_add(den, num) + num_lo - q * den_lo;
    Ok(q + residual / den)
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}
