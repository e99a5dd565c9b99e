use thiserror::Error;

use crate::algebra::Var;

/// Errors raised anywhere in the pipeline.
///
/// Variants fall into three families that the command line maps onto distinct
/// exit codes: mathematical alarms, precision exhaustion and bad input.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("formal variable mismatch: {0} vs {1}")]
    VariableMismatch(Var, Var),
    #[error("rational power needs a series with constant term 1")]
    NotUnitSeries,
    #[error("substitution must have zero constant term")]
    NonzeroConstantTerm,
    #[error("cannot compose a Laurent series (lowest exponent {0})")]
    LaurentCompose(i64),
    #[error("series has unbounded order; truncate before {0}")]
    Unbounded(&'static str),
    #[error("not divisible by (x - y): remainder {0}")]
    NotDivisible(String),
    #[error("value leaves Q(i, sqrt2): {0}")]
    OutsideField(String),
    #[error("invariant violated: {0}")]
    Alarm(String),
    #[error("insufficient precision: {0}")]
    Precision(String),
    #[error("argument out of range: {0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Exit code used by the command line: 2 for mathematical alarms,
    /// 3 for precision exhaustion, 4 for bad arguments, 1 for I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Precision(_) => 3,
            Error::Domain(_) | Error::Parse(_) => 4,
            Error::Io(_) | Error::Json(_) => 1,
            _ => 2,
        }
    }

    pub(crate) fn alarm(msg: impl Into<String>) -> Self {
        Error::Alarm(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
