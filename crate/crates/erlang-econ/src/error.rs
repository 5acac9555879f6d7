//! Crate-wide error type.

use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument is outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A configuration value (sweep spec, sim config, config file) is invalid.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// Two computation routes that must agree returned different answers.
    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    /// The equilibrium threshold search hit its bound, which signals a cost
    /// polynomial that is nearly costless relative to the reward.
    #[error("equilibrium threshold exceeds bound {bound}; costs are negligible at this reward")]
    ThresholdOverflow { bound: usize },

    #[error("failed to write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}
