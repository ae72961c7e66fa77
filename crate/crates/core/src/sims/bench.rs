use std::time::Instant;

use serde::Serialize;

use crate::error::{Result, XiError};
use crate::inference::{self, NullVariance};
use crate::rng;
use crate::sims::scenario::{generate, ScenarioKind, ScenarioSpec};
use crate::xi;

/// Largest allowed `time(m) / time(n)` per unit of `(m ln m) / (n ln n)`
/// between neighbouring grid sizes: 20 going from 10^3 to 10^4.
pub const SCALING_SLACK: f64 = 1.5;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchPoint {
    pub n: usize,
    pub reps: usize,
    pub median_seconds: f64,
    pub min_seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub points: Vec<BenchPoint>,
    /// `median(n[k+1]) / median(n[k])` for neighbouring grid sizes.
    pub ratios: Vec<f64>,
    pub scaling_ok: bool,
}

/// Wall time of `xi` followed by the continuous asymptotic test on independent
/// uniform data. Data generation is outside the timed region. Replicates run
/// sequentially on the calling thread.
pub fn runtime_benchmark(n_grid: &[usize], reps: usize, seed: u64) -> Result<BenchReport> {
    if reps == 0 || n_grid.is_empty() {
        return Err(XiError::Domain("reps and the size grid must be non-empty".into()));
    }
    let mut points = Vec::with_capacity(n_grid.len());
    for (g, &n) in n_grid.iter().enumerate() {
        let spec = ScenarioSpec::new(ScenarioKind::IndependentUniform, 0.0, n)?;
        let mut times = Vec::with_capacity(reps);
        for k in 0..reps as u64 {
            let data_seed = rng::derive_seed(rng::derive_seed(seed, g as u64), k);
            let sample = generate(&spec, data_seed)?;
            let start = Instant::now();
            let stat = xi::xi(&sample, data_seed)?;
            let test = inference::test_asymptotic(&sample, NullVariance::Continuous, data_seed)?;
            std::hint::black_box((stat, test));
            times.push(start.elapsed().as_secs_f64());
        }
        times.sort_unstable_by(f64::total_cmp);
        points.push(BenchPoint {
            n,
            reps,
            median_seconds: median_of_sorted(&times),
            min_seconds: times[0],
        });
    }
    let ratios: Vec<f64> = points
        .windows(2)
        .map(|w| w[1].median_seconds / w[0].median_seconds)
        .collect();
    let scaling_ok = points
        .windows(2)
        .zip(&ratios)
        .all(|(w, &ratio)| ratio < SCALING_SLACK * n_log_n(w[1].n) / n_log_n(w[0].n));
    Ok(BenchReport {
        points,
        ratios,
        scaling_ok,
    })
}

fn n_log_n(n: usize) -> f64 {
    let n = n.max(2) as f64;
    n * n.ln()
}

fn median_of_sorted(sorted: &[f64]) -> f64 {
    let m = sorted.len();
    if m % 2 == 1 {
        sorted[m / 2]
    } else {
        0.5 * (sorted[m / 2 - 1] + sorted[m / 2])
    }
}
