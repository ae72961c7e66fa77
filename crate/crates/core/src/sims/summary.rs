use serde::Serialize;

use crate::inference::normal_cdf;

/// Mean and unbiased variance.
pub fn mean_variance(values: &[f64]) -> (f64, f64) {
    let k = values.len() as f64;
    let mean = values.iter().sum::<f64>() / k;
    let ss: f64 = values.iter().map(|v| (v - mean).powi(2)).sum();
    (mean, if values.len() > 1 { ss / (k - 1.0) } else { 0.0 })
}

/// Kolmogorov-Smirnov distance between the empirical law of `values` and `N(0, variance)`.
pub fn ks_distance_normal(values: &[f64], variance: f64) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    let m = sorted.len() as f64;
    let sd = variance.sqrt();
    sorted
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let f = normal_cdf(v / sd);
            let above = (i + 1) as f64 / m - f;
            let below = f - i as f64 / m;
            above.max(below)
        })
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HistogramBin {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
    /// `count / (total * width)`.
    pub density: f64,
    /// Density of the reference normal at the bin centre.
    pub reference_density: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Histogram {
    pub lo: f64,
    pub hi: f64,
    /// Values outside `[lo, hi)`.
    pub outside: usize,
    pub bins: Vec<HistogramBin>,
}

/// Equal-width histogram on `[lo, hi)` with the `N(0, variance)` density alongside.
pub fn histogram(values: &[f64], lo: f64, hi: f64, n_bins: usize, variance: f64) -> Histogram {
    let width = (hi - lo) / n_bins as f64;
    let mut counts = vec![0usize; n_bins];
    let mut outside = 0;
    for &v in values {
        let k = ((v - lo) / width).floor();
        if k >= 0.0 && (k as usize) < n_bins {
            counts[k as usize] += 1;
        } else {
            outside += 1;
        }
    }
    let total = values.len() as f64;
    let norm = 1.0 / (2.0 * std::f64::consts::PI * variance).sqrt();
    let bins = counts
        .into_iter()
        .enumerate()
        .map(|(k, count)| {
            let b_lo = lo + k as f64 * width;
            let centre = b_lo + width / 2.0;
            HistogramBin {
                lo: b_lo,
                hi: b_lo + width,
                count,
                density: count as f64 / (total * width),
                reference_density: norm * (-centre * centre / (2.0 * variance)).exp(),
            }
        })
        .collect();
    Histogram {
        lo,
        hi,
        outside,
        bins,
    }
}
