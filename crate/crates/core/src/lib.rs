//! Rank correlation coefficient `xi_n` and its independence tests.
//!
//! `xi_n(X, Y)` estimates a measure of dependence that is 0 exactly when X and
//! Y are independent and 1 exactly when Y is a measurable function of X. It
//! is computed from ranks in O(n log n), and under independence
//! `sqrt(n) xi_n` is asymptotically normal with a variance that is 2/5 for
//! continuous Y and estimable from the data otherwise.
//!
//! ```
//! use xicor::{xi, PairedSample};
//!
//! let xs: Vec<f64> = (1..=20).map(f64::from).collect();
//! let sample = PairedSample::new(xs.clone(), xs).unwrap();
//! let result = xi(&sample, 0).unwrap();
//! assert!((result.value - 18.0 / 21.0).abs() < 1e-15);
//! ```

pub mod error;
pub mod inference;
pub mod oracle;
pub mod ranks;
pub mod rng;
pub mod sample;
pub mod sims;
pub mod xi;

pub use error::{Result, XiError};
pub use inference::{
    normal_cdf, tau_squared_hat, test_asymptotic, test_permutation, NullVariance, Statistic,
    TauSquaredEstimate, TestMethod, TestResult,
};
pub use ranks::{global_y_ranks, x_order, y_ranks_ordered, GlobalRanks, RankProfile, XOrder};
pub use rng::DEFAULT_SEED;
pub use sample::PairedSample;
pub use xi::{
    population_xi_bernoulli_product, xi, xi_symmetrized, xi_tie_averaged, Formula, SymmetrizedXi,
    TieAverage, XiResult,
};
