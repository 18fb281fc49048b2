use thiserror::Error;

use crate::numerics::DyadicInterval;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("valuation of zero requested where a finite value is required")]
    ZeroValuation,

    #[error("cannot combine elements of Q(sqrt({left})) and Q(sqrt({right}))")]
    MixedField { left: String, right: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("unsupported coefficient field: {0}")]
    UnsupportedField(String),

    #[error("polynomial must have degree at least {min}, got {got}")]
    DegreeTooSmall { min: usize, got: usize },

    #[error("leading coefficient must be nonzero")]
    ZeroLeadingCoefficient,

    #[error("critical points are not available for this polynomial: {0}")]
    CriticalPointsUnavailable(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("integer {0} is too large to factor")]
    FactorizationTooHard(String),

    #[error("comparison undecided after precision refinement")]
    ComparisonUndecided,

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("undecided after {iterations} iterations")]
    Undecided {
        iterations: usize,
        partial: Option<DyadicInterval>,
    },

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
