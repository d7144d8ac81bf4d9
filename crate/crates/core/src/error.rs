//! Error taxonomy shared by every operation in the crate.

use alloc::string::String;
use core::fmt;

/// Failure class of an operation. The three variants map onto distinct
/// process exit codes in the CLI, so they must stay coarse and stable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed caller input: inverted intervals, duplicate atoms,
    /// mismatched grids, conditioning on a zero-mass value.
    InvalidInput(String),
    /// The input parses but is not a distribution: mass off by more than
    /// tolerance, a non-monotone CDF, nonpositive shape parameters.
    InvalidDistribution(String),
    /// A numeric procedure failed to produce a usable value.
    Numeric(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::InvalidDistribution(msg) => write!(f, "invalid distribution: {msg}"),
            Error::Numeric(msg) => write!(f, "numeric failure: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn invalid_input(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

pub(crate) fn invalid_distribution(msg: impl Into<String>) -> Error {
    Error::InvalidDistribution(msg.into())
}

pub(crate) fn numeric(msg: impl Into<String>) -> Error {
    Error::Numeric(msg.into())
}
