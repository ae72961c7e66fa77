use thiserror::Error;

/// Errors raised by the statistics in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum XiError {
    #[error("sample size {0} is below the minimum of 2")]
    SampleTooSmall(usize),

    #[error("xs has {xs} values but ys has {ys}")]
    LengthMismatch { xs: usize, ys: usize },

    #[error("non-finite value {value} at position {index} of {column}")]
    NonFinite {
        column: &'static str,
        index: usize,
        value: f64,
    },

    #[error("all y values are equal")]
    ConstantY,

    #[error("all x values are equal")]
    ConstantX,

    #[error("variance estimate {0:e} is degenerate")]
    VarianceDegenerate(f64),

    #[error("y contains tied values; the continuous null variance needs an explicit override")]
    TiedContinuousY,

    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, XiError>;
