use thiserror::Error;

/// Errors raised by the evaluation, series and verification routines.
///
/// Every variant is a domain error: the inputs were well formed enough to
/// reach the library but violate a mathematical precondition.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("argument {0} is real (or too close to the real axis)")]
    RealArgument(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid partition {0:?}: {1}")]
    InvalidPartition(String, &'static str),

    #[error("invalid scalar {0:?}: {1}")]
    InvalidScalar(String, &'static str),

    #[error(
        "decimal input {0:?} cannot be represented exactly; use the float backend or a fraction"
    )]
    InexactInput(String),

    #[error("{name} must be {requirement}, got {value}")]
    OutOfRange {
        name: &'static str,
        requirement: &'static str,
        value: i64,
    },

    #[error("tau = {0} is not in the upper half-plane")]
    NotUpperHalfPlane(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid series text: {0}")]
    InvalidSeries(String),
}

impl Error {
    pub(crate) fn out_of_range(name: &'static str, requirement: &'static str, value: i64) -> Self {
        Error::OutOfRange {
            name,
            requirement,
            value,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
