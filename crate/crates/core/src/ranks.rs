//! X-ordering with random tie-breaking and the Y-rank counts built on it.
//!
//! For a sample arranged so that the x values increase, `r[i]` counts the
//! points whose y value is at most the i-th y value and `l[i]` counts those
//! whose y value is at least it. [`GlobalRanks`] holds the same two counts on
//! the original indexing. Ties in Y are never broken: both counts include every
//! tied point. Ties in X are broken uniformly at random from a seeded stream.
//!
//! Everything is integer valued and costs one sort.

use std::cmp::Ordering;

use rand::seq::SliceRandom;
use serde::Serialize;

use crate::rng;
use crate::sample::PairedSample;

/// Permutation that sorts the x column, plus the seed if one was consumed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct XOrder {
    pub order: Vec<usize>,
    /// Present only when X had ties and the seed actually influenced `order`.
    pub seed_used: Option<u64>,
}

impl XOrder {
    pub fn had_ties(&self) -> bool {
        self.seed_used.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankProfile {
    pub order: Vec<usize>,
    pub r: Vec<usize>,
    pub l: Vec<usize>,
    pub seed_used: Option<u64>,
}

/// Y-ranks on the original indexing: `r[i] = #{j : y_j <= y_i}`, `l[i] = #{j : y_j >= y_i}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GlobalRanks {
    pub r: Vec<usize>,
    pub l: Vec<usize>,
}

// Inputs are finite with -0.0 canonicalised, so partial_cmp is total here.
#[inline]
fn cmp_f64(a: &f64, b: &f64) -> Ordering {
    a.partial_cmp(b).unwrap_or(Ordering::Equal)
}

/// Calls `f(start, end)` for each maximal run of equal values in `sorted_idx`.
fn for_each_run(values: &[f64], sorted_idx: &[usize], mut f: impl FnMut(usize, usize)) {
    let n = sorted_idx.len();
    let mut start = 0;
    while start < n {
        let v = values[sorted_idx[start]];
        let mut end = start + 1;
        while end < n && values[sorted_idx[end]] == v {
            end += 1;
        }
        f(start, end);
        start = end;
    }
}

fn argsort(values: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| cmp_f64(&values[a], &values[b]));
    idx
}

/// Sorts the sample by x, shuffling each block of tied x values with the
/// stream keyed by `seed`. Blocks are shuffled in increasing x order, so the
/// result is a deterministic function of `(xs, seed)`.
pub fn x_order(sample: &PairedSample, seed: u64) -> XOrder {
    x_order_of(sample.xs(), seed)
}

pub(crate) fn x_order_of(xs: &[f64], seed: u64) -> XOrder {
    let mut order = argsort(xs);
    let mut runs = Vec::new();
    for_each_run(xs, &order, |s, e| {
        if e - s > 1 {
            runs.push((s, e));
        }
    });
    if runs.is_empty() {
        return XOrder {
            order,
            seed_used: None,
        };
    }
    let mut rng = rng::stream(seed);
    for (s, e) in runs {
        order[s..e].shuffle(&mut rng);
    }
    XOrder {
        order,
        seed_used: Some(seed),
    }
}

/// Counts `#{j : y_j <= y_i}` and `#{j : y_j >= y_i}` for every `i`.
///
/// Values must be finite.
pub fn global_y_ranks(ys: &[f64]) -> GlobalRanks {
    let n = ys.len();
    let idx = argsort(ys);
    let mut r = vec![0; n];
    let mut l = vec![0; n];
    for_each_run(ys, &idx, |s, e| {
        for &i in &idx[s..e] {
            r[i] = e;
            l[i] = n - s;
        }
    });
    GlobalRanks { r, l }
}

/// Y-ranks of the sample after rearranging it by `order`.
pub fn y_ranks_ordered(sample: &PairedSample, order: &XOrder) -> RankProfile {
    let ordered: Vec<f64> = order.order.iter().map(|&i| sample.ys()[i]).collect();
    let GlobalRanks { r, l } = global_y_ranks(&ordered);
    RankProfile {
        order: order.order.clone(),
        r,
        l,
        seed_used: order.seed_used,
    }
}

/// `x_order` followed by `y_ranks_ordered`.
pub fn rank_profile(sample: &PairedSample, seed: u64) -> RankProfile {
    y_ranks_ordered(sample, &x_order(sample, seed))
}
