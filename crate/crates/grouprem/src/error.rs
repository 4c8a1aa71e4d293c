use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument violates a documented precondition.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A construction would exceed a hard resource cap (group order, arc
    /// count, enumeration size, exact arithmetic width).
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    /// An input object fails a contract that the caller promised to uphold,
    /// e.g. a removal set that does not hit every copy.
    #[error("contract violation: {0}")]
    ContractViolation(String),

    /// Equation text that does not conform to the grammar.
    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// Equation rows that are linearly dependent over the rationals.
    /// `row` is the zero-based index of the first dependent equation.
    #[error("independence violation: equation {row} depends on the earlier equations")]
    IndependenceViolation { row: usize },

    /// A malformed instance or sweep specification.
    #[error("spec error: {0}")]
    Spec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
