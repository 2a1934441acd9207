use thiserror::Error;

/// Errors produced by the library.
///
/// `Consistency` marks a broken internal invariant (a non-exact division,
/// an orthogonality failure, a threshold with no witness). Everything else
/// is a problem with the caller's input or a configured resource limit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("weight mismatch: expected {expected}, got {actual}")]
    WeightMismatch { expected: usize, actual: usize },

    #[error("wreath level {level} exceeds the configured cap {cap}")]
    LevelCap { level: u32, cap: u32 },

    #[error("n = {n} exceeds the oracle limit {max} (2^cap)")]
    OracleLimit { n: usize, max: usize },

    #[error("requires oracle at 2^{level}, beyond the configured cap")]
    RequiresOracle { level: u32 },

    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn consistency(msg: impl Into<String>) -> Self {
        Error::Consistency(msg.into())
    }

    pub fn is_consistency(&self) -> bool {
        matches!(self, Error::Consistency(_))
    }

    /// Whether the error is a configured resource limit rather than bad input.
    pub fn is_out_of_reach(&self) -> bool {
        matches!(self, Error::LevelCap { .. } | Error::OracleLimit { .. } | Error::RequiresOracle { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
