//! Synthetic data-generating processes.
//!
//! Unless stated otherwise `X ~ U[-1, 1]` and `eps ~ N(0, 1)` independent:
//!
//! | kind              | Y                                                     |
//! |-------------------|-------------------------------------------------------|
//! | `linear`          | `0.5 X + 3 lambda eps`                                |
//! | `step`            | `f(X) + 10 lambda eps`, f = -3, 2, -4, -3 on the quarters of [-1, 1] |
//! | `w_shape`         | `|X + 0.5| 1{X < 0} + |X - 0.5| 1{X >= 0} + 0.75 lambda eps` |
//! | `sinusoid`        | `cos(8 pi X) + 3 lambda eps`                          |
//! | `circular`        | `Z sqrt(1 - X^2) + 0.9 lambda eps`, Z = +-1 equiprobable |
//! | `heteroskedastic` | `3 (s(X)(1 - lambda) + lambda) eps`, s(X) = 1{|X| <= 0.5} |
//!
//! plus three independence / discrete models that ignore `lambda`:
//! `independent_uniform` (X, Y iid U[0,1]), `independent_binomial`
//! (X, Y iid Binomial(3, 1/2)) and `bernoulli_product` (X ~ Bernoulli(p),
//! Y = X Z with Z ~ Bernoulli(p'), parameters `[p, p']`).
//!
//! Per pair the draws are taken in a fixed order: X, then Z (circular only),
//! then eps. The noise deviate is drawn even at `lambda = 0`, so the same seed
//! gives the same X values and noise at every noise level.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::{Binomial, Distribution};
use serde::Serialize;

use crate::error::{Result, XiError};
use crate::oracle::GenerativeModel;
use crate::rng::{self, StreamRng};
use crate::sample::PairedSample;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioKind {
    Linear,
    Step,
    WShape,
    Sinusoid,
    Circular,
    Heteroskedastic,
    IndependentUniform,
    IndependentBinomial,
    BernoulliProduct,
}

impl ScenarioKind {
    /// The six noisy alternatives indexed by `lambda`.
    pub const ALTERNATIVES: [ScenarioKind; 6] = [
        ScenarioKind::Linear,
        ScenarioKind::Step,
        ScenarioKind::WShape,
        ScenarioKind::Sinusoid,
        ScenarioKind::Circular,
        ScenarioKind::Heteroskedastic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ScenarioKind::Linear => "linear",
            ScenarioKind::Step => "step",
            ScenarioKind::WShape => "w_shape",
            ScenarioKind::Sinusoid => "sinusoid",
            ScenarioKind::Circular => "circular",
            ScenarioKind::Heteroskedastic => "heteroskedastic",
            ScenarioKind::IndependentUniform => "independent_uniform",
            ScenarioKind::IndependentBinomial => "independent_binomial",
            ScenarioKind::BernoulliProduct => "bernoulli_product",
        }
    }
}

impl fmt::Display for ScenarioKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScenarioKind {
    type Err = XiError;

    fn from_str(s: &str) -> Result<Self> {
        let all = [
            ScenarioKind::Linear,
            ScenarioKind::Step,
            ScenarioKind::WShape,
            ScenarioKind::Sinusoid,
            ScenarioKind::Circular,
            ScenarioKind::Heteroskedastic,
            ScenarioKind::IndependentUniform,
            ScenarioKind::IndependentBinomial,
            ScenarioKind::BernoulliProduct,
        ];
        all.into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| XiError::Domain(format!("unknown scenario '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioSpec {
    pub kind: ScenarioKind,
    pub lambda: f64,
    pub n: usize,
    pub params: Vec<f64>,
}

impl ScenarioSpec {
    pub fn new(kind: ScenarioKind, lambda: f64, n: usize) -> Result<Self> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(XiError::Domain(format!("lambda = {lambda} is outside [0, 1]")));
        }
        if n < 2 {
            return Err(XiError::SampleTooSmall(n));
        }
        if kind == ScenarioKind::BernoulliProduct {
            return Err(XiError::Domain(
                "bernoulli_product needs parameters; use ScenarioSpec::bernoulli_product".into(),
            ));
        }
        Ok(Self {
            kind,
            lambda,
            n,
            params: Vec::new(),
        })
    }

    pub fn bernoulli_product(p: f64, p_prime: f64, n: usize) -> Result<Self> {
        crate::xi::population_xi_bernoulli_product(p, p_prime)?;
        if n < 2 {
            return Err(XiError::SampleTooSmall(n));
        }
        Ok(Self {
            kind: ScenarioKind::BernoulliProduct,
            lambda: 0.0,
            n,
            params: vec![p, p_prime],
        })
    }
}

fn step_level(x: f64) -> f64 {
    if x < -0.5 {
        -3.0
    } else if x < 0.0 {
        2.0
    } else if x < 0.5 {
        -4.0
    } else {
        -3.0
    }
}

fn binomial_3_half(rng: &mut StreamRng) -> f64 {
    Binomial::new(3, 0.5).expect("valid binomial").sample(rng) as f64
}

impl GenerativeModel for ScenarioSpec {
    fn draw(&self, rng: &mut StreamRng) -> (f64, f64) {
        let lambda = self.lambda;
        let signed_unit = |rng: &mut StreamRng| rng::uniform(rng, -1.0, 1.0);
        match self.kind {
            ScenarioKind::Linear => {
                let x = signed_unit(rng);
                (x, 0.5 * x + 3.0 * lambda * rng::standard_normal(rng))
            }
            ScenarioKind::Step => {
                let x = signed_unit(rng);
                (x, step_level(x) + 10.0 * lambda * rng::standard_normal(rng))
            }
            ScenarioKind::WShape => {
                let x = signed_unit(rng);
                let w = if x < 0.0 { (x + 0.5).abs() } else { (x - 0.5).abs() };
                (x, w + 0.75 * lambda * rng::standard_normal(rng))
            }
            ScenarioKind::Sinusoid => {
                let x = signed_unit(rng);
                let s = (8.0 * std::f64::consts::PI * x).cos();
                (x, s + 3.0 * lambda * rng::standard_normal(rng))
            }
            ScenarioKind::Circular => {
                let x = signed_unit(rng);
                let z = if rng.random::<bool>() { 1.0 } else { -1.0 };
                let arc = z * (1.0 - x * x).sqrt();
                (x, arc + 0.9 * lambda * rng::standard_normal(rng))
            }
            ScenarioKind::Heteroskedastic => {
                let x = signed_unit(rng);
                let sigma = if x.abs() <= 0.5 { 1.0 } else { 0.0 };
                let scale = 3.0 * (sigma * (1.0 - lambda) + lambda);
                (x, scale * rng::standard_normal(rng))
            }
            ScenarioKind::IndependentUniform => (rng.random(), rng.random()),
            ScenarioKind::IndependentBinomial => (binomial_3_half(rng), binomial_3_half(rng)),
            ScenarioKind::BernoulliProduct => {
                let (p, p_prime) = (self.params[0], self.params[1]);
                let x = f64::from(u8::from(rng.random::<f64>() < p));
                let z = f64::from(u8::from(rng.random::<f64>() < p_prime));
                (x, x * z)
            }
        }
    }

    fn description(&self) -> String {
        match self.kind {
            ScenarioKind::BernoulliProduct => format!(
                "bernoulli_product p={} p'={} n={}",
                self.params[0], self.params[1], self.n
            ),
            kind => format!("{kind} lambda={} n={}", self.lambda, self.n),
        }
    }
}

/// Draws `spec.n` pairs from the scenario with the stream keyed by `seed`.
pub fn generate(spec: &ScenarioSpec, seed: u64) -> Result<PairedSample> {
    spec.sample(spec.n, seed)
}
