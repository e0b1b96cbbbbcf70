use crate::formats::ParseError;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A profile, ranking, or group violates a structural invariant.
    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    /// An operation was called with arguments outside its domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A ballot shift asks for more ballots than its source group holds.
    #[error("insufficient ballots for shift `{shift}`: need {needed}, have {available}")]
    InsufficientCount {
        shift: String,
        needed: u64,
        available: u64,
    },

    /// A partition leaves one side without any ballots.
    #[error("partition leaves one side empty")]
    EmptySide,

    /// Every ballot exhausted before any candidate reached a majority.
    /// Unreachable under the standard elimination rule; kept so the
    /// condition is reported rather than silently resolved.
    #[error("all ballots exhausted before a winner was determined")]
    NoWinner,

    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T> = std::result::Result<T, Error>;
