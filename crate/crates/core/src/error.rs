use thiserror::Error;

use crate::space::Domain;

/// Error type shared by every module in the crate.
///
/// The CLI maps variants onto its exit-code taxonomy: format/argument
/// problems, domain mismatches, and cone violations are distinguished
/// because scripts branch on them.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// Two values live on incompatible domains (kind, size, or endpoint differ).
    #[error("domain mismatch: expected {expected}, found {found}")]
    DomainMismatch { expected: Domain, found: Domain },

    /// An operator input was required to lie in the positive cone but does not.
    #[error("cone violation: value {value} at index {index} is negative")]
    ConeViolation { index: usize, value: f64 },

    /// A value was NaN or infinite where a finite real was required.
    #[error("non-finite value {value} at index {index} in {context}")]
    NonFinite {
        context: &'static str,
        index: usize,
        value: f64,
    },

    /// A pair in a normality-constant estimate violates its precondition.
    #[error("invalid pair at index {index}: {reason}")]
    InvalidPair { index: usize, reason: String },

    /// A malformed input file (kernel CSV or spec JSON).
    #[error("parse error: {0}")]
    Parse(String),

    /// Any other precondition violation (zero trials, empty family, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
