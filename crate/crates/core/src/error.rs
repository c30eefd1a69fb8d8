use thiserror::Error;

/// Errors raised when constructing or operating on distribution functions
/// and adjustment templates.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("input sequence is empty")]
    EmptyInput,

    #[error("length mismatch: {left} {left_len} vs {right} {right_len}")]
    LengthMismatch {
        left: &'static str,
        left_len: usize,
        right: &'static str,
        right_len: usize,
    },

    #[error("non-finite value in {field} at index {index}")]
    NonFinite { field: &'static str, index: usize },

    #[error("breakpoints must be strictly increasing (index {index})")]
    NonMonotoneBreakpoints { index: usize },

    #[error("levels must be nondecreasing (index {index})")]
    NonMonotoneLevels { index: usize },

    #[error("level {value} at index {index} lies outside (0, 1]")]
    LevelOutOfRange { index: usize, value: f64 },

    #[error("terminal level must be exactly 1, got {value}")]
    TerminalLevelNotOne { value: f64 },

    #[error("bad weights: {0}")]
    BadWeights(String),

    #[error("scale must be positive, got {0}")]
    NonPositiveScale(f64),

    #[error("alpha must lie in the open interval (0, 1), got {0}")]
    AlphaOutOfRange(f64),

    #[error("{class} invariant violated: {reason}")]
    ClassViolation { class: &'static str, reason: String },

    #[error("non-canonical {what}: {reason}")]
    NonCanonical { what: &'static str, reason: String },

    #[error("bad generator bounds: {0}")]
    BadBounds(String),

    #[error("precondition violated: first argument does not FOSD-dominate the second")]
    PreconditionNotDominated,
}

pub type Result<T> = std::result::Result<T, Error>;
