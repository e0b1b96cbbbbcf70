//! Parsing and serialization: the native `.rcv` line format, a strict
//! PrefLib SOI/TOI subset, and machine-readable JSON reports.

mod native;
mod preflib;
mod report;

pub use native::{parse_native, write_native};
pub use preflib::{parse_preflib, write_preflib};
pub use report::{
    write_report, AllReport, Analysis, BordaReport, CondorcetReport, ConsistencyReport,
    IrvReport, MonotonicityReport, PairwiseReport, PluralityReport, SCHEMA_VERSION,
};

use std::fmt;

/// Which parsing rule a line violated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    BadHeader,
    UnknownCandidate,
    DuplicateCandidateInRanking,
    BadCount,
    ReservedCharacter,
    TiesUnsupported,
    EmptyRanking,
}

impl ParseErrorKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ParseErrorKind::BadHeader => "bad-header",
            ParseErrorKind::UnknownCandidate => "unknown-candidate",
            ParseErrorKind::DuplicateCandidateInRanking => "duplicate-candidate-in-ranking",
            ParseErrorKind::BadCount => "bad-count",
            ParseErrorKind::ReservedCharacter => "reserved-character",
            ParseErrorKind::TiesUnsupported => "ties-unsupported",
            ParseErrorKind::EmptyRanking => "empty-ranking",
        }
    }
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A parse failure, pointing at the offending physical line (1-based).
/// The first error aborts parsing: election data is trusted in full or
/// not at all.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {kind}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, kind: ParseErrorKind, message: impl Into<String>) -> Self {
        ParseError {
            line,
            kind,
            message: message.into(),
        }
    }
}
