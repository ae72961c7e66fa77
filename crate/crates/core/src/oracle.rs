//! Slow reference implementations and population-level references.
//!
//! The naive routines count ranks with a direct double loop over the defining
//! sets and transcribe the formulas term by term. They share only the X
//! tie-break ([`ranks::x_order`]) with the fast path, so for a given seed both
//! see the same arrangement and must agree exactly.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Result, XiError};
use crate::inference;
use crate::ranks;
use crate::rng::{self, StreamRng};
use crate::sample::PairedSample;
use crate::xi::{self, XiRatio};

/// `xi_n` from O(n^2) rank counting and the literal tie formula.
pub fn xi_naive(sample: &PairedSample, seed: u64) -> Result<XiRatio> {
    let order = ranks::x_order(sample, seed).order;
    let y: Vec<f64> = order.iter().map(|&i| sample.ys()[i]).collect();
    let n = y.len();
    let mut r = vec![0i128; n];
    let mut l = vec![0i128; n];
    for i in 0..n {
        for j in 0..n {
            if y[j] <= y[i] {
                r[i] += 1;
            }
            if y[j] >= y[i] {
                l[i] += 1;
            }
        }
    }
    let n_i = n as i128;
    let mut numerator = 0i128;
    for i in 0..n - 1 {
        numerator += (r[i + 1] - r[i]).abs();
    }
    let mut denominator = 0i128;
    for &li in &l {
        denominator += li * (n_i - li);
    }
    if denominator == 0 {
        return Err(XiError::ConstantY);
    }
    Ok(XiRatio::from_integer(1) - XiRatio::new(n_i * numerator, 2 * denominator))
}

/// `tau_hat^2` from the unsorted ranks: with `m(p, q) = min(R(p), R(q))`,
///
/// ```text
/// a = n^-4 sum_{p,q} m(p,q)^2          b = n^-5 sum_{p,q,s} m(p,q) m(p,s)
/// c = n^-3 sum_{p,q} m(p,q)            d = n^-3 sum_p L(p) (n - L(p))
/// ```
///
/// The four sums are combined over their common denominator before the one
/// floating point division. O(n^3); meant for n up to a few hundred.
pub fn tau_squared_naive(ys: &[f64]) -> Result<f64> {
    let n = ys.len();
    if n < 2 {
        return Err(XiError::SampleTooSmall(n));
    }
    let mut big_r = vec![0i128; n];
    let mut big_l = vec![0i128; n];
    for i in 0..n {
        for j in 0..n {
            if ys[j] <= ys[i] {
                big_r[i] += 1;
            }
            if ys[j] >= ys[i] {
                big_l[i] += 1;
            }
        }
    }
    let n_i = n as i128;
    let d_sum: i128 = big_l.iter().map(|&l| l * (n_i - l)).sum();
    if d_sum == 0 {
        return Err(XiError::ConstantY);
    }
    let m = |p: usize, q: usize| big_r[p].min(big_r[q]);
    let (mut a_sum, mut b_sum, mut c_sum) = (0i128, 0i128, 0i128);
    for p in 0..n {
        for q in 0..n {
            a_sum += m(p, q) * m(p, q);
            c_sum += m(p, q);
            for s in 0..n {
                b_sum += m(p, q) * m(p, s);
            }
        }
    }
    // a - 2b + c^2 = (n^2 a_sum - 2n b_sum + c_sum^2) / n^6 and d^2 = d_sum^2 / n^6.
    let numerator = n_i * n_i * a_sum - 2 * n_i * b_sum + c_sum * c_sum;
    Ok(numerator as f64 / (d_sum as f64 * d_sum as f64))
}

/// A law of `(X, Y)` that can be sampled from a seeded stream.
pub trait GenerativeModel: Sync {
    fn draw(&self, rng: &mut StreamRng) -> (f64, f64);

    fn description(&self) -> String;

    fn sample(&self, n: usize, seed: u64) -> Result<PairedSample> {
        let mut rng = rng::stream(seed);
        let (xs, ys) = (0..n).map(|_| self.draw(&mut rng)).unzip();
        PairedSample::new(xs, ys)
    }
}

/// A model given by a closure.
pub struct FnModel<F> {
    description: String,
    draw: F,
}

impl<F> FnModel<F>
where
    F: Fn(&mut StreamRng) -> (f64, f64) + Sync,
{
    pub fn new(description: impl Into<String>, draw: F) -> Self {
        Self {
            description: description.into(),
            draw,
        }
    }
}

impl<F> GenerativeModel for FnModel<F>
where
    F: Fn(&mut StreamRng) -> (f64, f64) + Sync,
{
    fn draw(&self, rng: &mut StreamRng) -> (f64, f64) {
        (self.draw)(rng)
    }

    fn description(&self) -> String {
        self.description.clone()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PopulationEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub n: usize,
    pub reps: usize,
}

/// `xi_n` on `reps` independent samples of size `n` from `model`.
///
/// Replicate `k` draws its data from `derive_seed(seed, k)` and breaks X ties
/// with `derive_seed(derive_seed(seed, k), 1)`. Output order is replicate order.
pub fn xi_replicates(
    model: &dyn GenerativeModel,
    n: usize,
    reps: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    (0..reps as u64)
        .into_par_iter()
        .map(|k| {
            let k_seed = rng::derive_seed(seed, k);
            let s = model.sample(n, k_seed)?;
            Ok(xi::xi(&s, rng::derive_seed(k_seed, 1))?.value)
        })
        .collect()
}

/// Plug-in Monte Carlo estimate of the population coefficient: the mean of
/// `xi_n` over [`xi_replicates`], with its standard error.
pub fn xi_population_mc(
    model: &dyn GenerativeModel,
    n: usize,
    reps: usize,
    seed: u64,
) -> Result<PopulationEstimate> {
    if reps < 2 {
        return Err(XiError::Domain("reps must be at least 2".into()));
    }
    let values = xi_replicates(model, n, reps, seed)?;
    let (mean, sd) = xi::mean_sd(&values);
    Ok(PopulationEstimate {
        estimate: mean,
        stderr: sd / (reps as f64).sqrt(),
        n,
        reps,
    })
}

/// Tie structure of a randomly generated verification case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepFamily {
    NoTies,
    XTies,
    YTies,
    BothTies,
    ConstantX,
    NearConstantY,
}

impl SweepFamily {
    pub const ALL: [SweepFamily; 6] = [
        SweepFamily::NoTies,
        SweepFamily::XTies,
        SweepFamily::YTies,
        SweepFamily::BothTies,
        SweepFamily::ConstantX,
        SweepFamily::NearConstantY,
    ];
}

/// Random sample of size `n` with the tie structure of `family`. Y is never constant.
pub fn sweep_sample(family: SweepFamily, n: usize, rng: &mut StreamRng) -> PairedSample {
    let n = n.max(2);
    let continuous = |rng: &mut StreamRng| -> Vec<f64> { (0..n).map(|_| rng.random()).collect() };
    let tied = |rng: &mut StreamRng| -> Vec<f64> {
        let levels = rng.random_range(1..=(n / 2).max(2));
        (0..n).map(|_| rng.random_range(0..levels) as f64).collect()
    };
    let (xs, mut ys) = match family {
        SweepFamily::NoTies => (continuous(rng), continuous(rng)),
        SweepFamily::XTies => (tied(rng), continuous(rng)),
        SweepFamily::YTies => (continuous(rng), tied(rng)),
        SweepFamily::BothTies => (tied(rng), tied(rng)),
        SweepFamily::ConstantX => (vec![1.5; n], tied(rng)),
        SweepFamily::NearConstantY => {
            let mut ys = vec![0.25; n];
            let k = rng.random_range(0..n);
            ys[k] = 0.75;
            (tied(rng), ys)
        }
    };
    if ys.windows(2).all(|w| w[0] == w[1]) {
        ys[0] += 1.0;
    }
    PairedSample::new(xs, ys).expect("generated values are finite")
}

#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyOptions {
    /// Number of random cases for the xi comparison; the tau comparison uses half.
    pub sweep_size: usize,
    /// Largest sample size for the xi comparison; the tau comparison caps at 100.
    pub max_n: usize,
    pub seed: u64,
    /// Perturbs the fast xi by one rank jump. Only for exercising the failure path.
    pub inject_fault: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    pub family: SweepFamily,
    pub case_seed: u64,
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    pub fast: String,
    pub reference: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub passed: bool,
    pub sweeps: Vec<SweepReport>,
}

type CaseCheck = dyn Fn(&PairedSample, u64) -> Option<(String, String)> + Sync;

fn run_sweep(
    name: &'static str,
    cases: usize,
    max_n: usize,
    seed: u64,
    families: &[SweepFamily],
    check: &CaseCheck,
) -> SweepReport {
    let outcomes: Vec<Option<Counterexample>> = (0..cases as u64)
        .into_par_iter()
        .map(|k| {
            let case_seed = rng::derive_seed(seed, k);
            let mut rng = rng::stream(case_seed);
            let family = families[k as usize % families.len()];
            let n = rng.random_range(2..=max_n.max(2));
            let sample = sweep_sample(family, n, &mut rng);
            check(&sample, case_seed).map(|(fast, reference)| Counterexample {
                family,
                case_seed,
                xs: sample.xs().to_vec(),
                ys: sample.ys().to_vec(),
                fast,
                reference,
            })
        })
        .collect();
    let failures = outcomes.iter().filter(|o| o.is_some()).count();
    SweepReport {
        name,
        cases,
        failures,
        passed: failures == 0,
        counterexample: outcomes.into_iter().flatten().next(),
    }
}

/// Relative error `|a - b| / max(|a|, |b|)`, zero when both are zero.
pub fn relative_error(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// Compares every fast routine with its reference on random samples.
pub fn verify(options: &VerifyOptions) -> VerificationReport {
    let fault = options.inject_fault;
    let xi_check = move |s: &PairedSample, seed: u64| {
        let profile = ranks::rank_profile(s, seed);
        let jumps = xi::rank_jumps(&profile.r) + u128::from(fault);
        let fast = xi::xi_ratio(s.len(), jumps, xi::tie_denominator(&profile.l));
        let reference = xi_naive(s, seed).expect("sweep samples have non-constant y");
        (fast != reference).then(|| (fast.to_string(), reference.to_string()))
    };
    let no_tie_check = |s: &PairedSample, seed: u64| {
        let profile = ranks::rank_profile(s, seed);
        let denominator = xi::tie_denominator(&profile.l);
        let general = xi::xi_ratio(s.len(), xi::rank_jumps(&profile.r), denominator);
        let short = xi::xi_ratio_no_tie(&profile.r);
        (general != short).then(|| (general.to_string(), short.to_string()))
    };
    let rank_check = |s: &PairedSample, seed: u64| {
        let profile = ranks::rank_profile(s, seed);
        let mut ordered = profile.r.clone();
        ordered.sort_unstable();
        let mut global = ranks::global_y_ranks(s.ys()).r;
        global.sort_unstable();
        let sum_r: usize = profile.r.iter().sum();
        let sum_l: usize = profile.l.iter().sum();
        (ordered != global || sum_r != sum_l)
            .then(|| (format!("{:?}", profile.r), format!("{global:?}")))
    };
    let tau_check = |s: &PairedSample, _seed: u64| {
        let fast = inference::tau_squared_hat(s.ys()).expect("non-constant y").value;
        let reference = tau_squared_naive(s.ys()).expect("non-constant y");
        (relative_error(fast, reference) > 1e-12)
            .then(|| (format!("{fast:e}"), format!("{reference:e}")))
    };

    let max_n = options.max_n.max(2);
    let sub_seed = |k: u64| rng::derive_seed(options.seed, u64::MAX - k);
    let all = &SweepFamily::ALL;
    let sweeps = vec![
        run_sweep("xi_fast_vs_naive", options.sweep_size, max_n, options.seed, all, &xi_check),
        run_sweep("rank_multisets", options.sweep_size, max_n, sub_seed(0), all, &rank_check),
        run_sweep(
            "tau_fast_vs_naive",
            options.sweep_size / 2,
            max_n.min(100),
            sub_seed(1),
            all,
            &tau_check,
        ),
        // The reduction to the short formula only holds when Y has no ties.
        run_sweep(
            "tie_formula_reduction",
            options.sweep_size,
            max_n,
            sub_seed(2),
            &[SweepFamily::NoTies, SweepFamily::XTies],
            &no_tie_check,
        ),
    ];
    VerificationReport {
        passed: sweeps.iter().all(|s| s.passed),
        sweeps,
    }
}
