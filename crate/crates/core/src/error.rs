//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Division by zero; in the evaluation backend this signals a pole hit
    /// and the caller resamples the point.
    #[error("division by zero")]
    DivisionByZero,

    /// Scalars from different field contexts were combined.
    #[error("field context mismatch")]
    ContextMismatch,

    /// The evaluation modulus is unusable.
    #[error("bad evaluation modulus: {0}")]
    BadModulus(String),

    /// A linear substitution made a denominator vanish identically.
    #[error("substitution collapsed a denominator to zero")]
    SubstitutionCollapse,

    /// An operator received a bimould of the wrong mu-class.
    #[error("class error: {0}")]
    ClassError(String),

    /// A flexion-unit candidate failed validation.
    #[error("unit error: {0}")]
    UnitError(String),

    /// Pole density prevented sampling an evaluation point.
    #[error("resampling exhausted after {attempts} attempts at length {length}")]
    ResampleExhausted { length: usize, attempts: usize },

    /// The verification catalogue has no check with this name.
    #[error("unknown check: {0}")]
    UnknownCheck(String),

    /// Malformed canonical text for a polynomial or rational function.
    #[error("parse error: {0}")]
    Parse(String),
}
