//! CLI error type with a fixed mapping to process exit codes.

use std::path::Path;

/// Exit code 0 is success; everything else routes through here.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Unreadable or malformed input, unknown names, bad flag values.
    #[error("input error: {0}")]
    Input(String),
    /// The input parsed but does not describe a valid distribution.
    #[error("invalid distribution: {0}")]
    Distribution(String),
    /// A numeric routine failed to converge or produced non-finite values.
    #[error("numeric failure: {0}")]
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Distribution(_) => 3,
            CliError::Numeric(_) => 4,
        }
    }
}

impl From<supfact_core::Error> for CliError {
    fn from(e: supfact_core::Error) -> Self {
        match e {
            supfact_core::Error::InvalidInput(m) => CliError::Input(m),
            supfact_core::Error::InvalidDistribution(m) => CliError::Distribution(m),
            supfact_core::Error::Numeric(m) => CliError::Numeric(m),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

pub fn input_err(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

pub fn io_err(path: &Path, e: std::io::Error) -> CliError {
    CliError::Input(format!("{}: {}", path.display(), e))
}
