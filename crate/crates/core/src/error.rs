use thiserror::Error;

/// Errors raised by the exact-arithmetic layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero rational function")]
    DivisionByZero,

    #[error("evaluation at a pole ({0})")]
    Pole(String),

    #[error("index {index} is below the sequence offset {offset}")]
    IndexBelowOffset { index: i64, offset: i64 },

    #[error("coefficient {coeff} of the recurrence has a pole at n = {n}")]
    CoefficientPole { coeff: usize, n: i64 },

    #[error("term a_{0} is zero; ratio-based tests are undefined there")]
    ZeroTerm(i64),

    #[error("terms change sign between a_{0} and a_{1}")]
    SignChange(i64, i64),

    #[error("scale factor has a zero or pole at n = {0}")]
    ScaleSingular(i64),

    #[error("invalid recurrence: {0}")]
    InvalidRecurrence(String),

    #[error("invalid expansion: {0}")]
    InvalidExpansion(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The mathematical method does not apply to this input.
    #[error("inapplicable: {0}")]
    Inapplicable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
