use serde::Serialize;

use crate::error::{Result, XiError};

/// `n >= 2` paired observations of two real variables, all finite.
///
/// Negative zero is stored as positive zero so that equal values compare equal
/// under every ordering used downstream.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairedSample {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl PairedSample {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(XiError::LengthMismatch {
                xs: xs.len(),
                ys: ys.len(),
            });
        }
        if xs.len() < 2 {
            return Err(XiError::SampleTooSmall(xs.len()));
        }
        Ok(Self {
            xs: normalize("xs", xs)?,
            ys: normalize("ys", ys)?,
        })
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    /// The sample with the roles of X and Y exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            xs: self.ys.clone(),
            ys: self.xs.clone(),
        }
    }

    /// Replaces the y column, keeping xs. The new column must have the same length.
    pub fn with_ys(&self, ys: Vec<f64>) -> Result<Self> {
        Self::new(self.xs.clone(), ys)
    }

    pub fn into_parts(self) -> (Vec<f64>, Vec<f64>) {
        (self.xs, self.ys)
    }
}

fn normalize(column: &'static str, mut values: Vec<f64>) -> Result<Vec<f64>> {
    for (index, v) in values.iter_mut().enumerate() {
        if !v.is_finite() {
            return Err(XiError::NonFinite {
                column,
                index,
                value: *v,
            });
        }
        // -0.0 + 0.0 == +0.0
        *v += 0.0;
    }
    Ok(values)
}

/// True when at least two entries are equal.
pub fn has_ties(values: &[f64]) -> bool {
    let mut sorted = values.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    sorted.windows(2).any(|w| w[0] == w[1])
}

/// True when every entry equals the first.
pub fn is_constant(values: &[f64]) -> bool {
    values.windows(2).all(|w| w[0] == w[1])
}
