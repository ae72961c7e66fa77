use thiserror::Error;
use xicor::XiError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{0}")]
    Parse(String),

    #[error("{0}")]
    Io(String),

    #[error(transparent)]
    Stat(#[from] XiError),

    #[error("{0}")]
    Verification(String),
}

impl CliError {
    /// Stable machine-readable error code.
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Parse(_) => "parse",
            CliError::Io(_) => "io",
            CliError::Verification(_) => "verification_failed",
            CliError::Stat(e) => match e {
                XiError::SampleTooSmall(_) => "sample_too_small",
                XiError::ConstantY => "constant_y",
                XiError::ConstantX => "constant_x",
                XiError::VarianceDegenerate(_) => "variance_degenerate",
                XiError::TiedContinuousY => "tied_continuous_y",
                XiError::LengthMismatch { .. } | XiError::NonFinite { .. } => "parse",
                XiError::Domain(_) => "usage",
            },
        }
    }

    /// 1 verification failure, 2 parse or usage, 3 constant column,
    /// 4 sample too small, 5 degenerate variance.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Usage(_) | CliError::Parse(_) | CliError::Io(_) => 2,
            CliError::Stat(e) => match e {
                XiError::ConstantY | XiError::ConstantX => 3,
                XiError::SampleTooSmall(_) => 4,
                XiError::VarianceDegenerate(_) => 5,
                _ => 2,
            },
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Parse(e.to_string())
    }
}
