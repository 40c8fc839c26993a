use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Argument outside the domain where the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),
    /// Argument outside a table, segment or truncation range.
    #[error("range error: {0}")]
    Range(String),
    /// Quantity is undefined for this input (e.g. middle prime of 1).
    #[error("undefined: {0}")]
    Undefined(String),
    /// Two independent evaluation routes disagree beyond tolerance.
    #[error("consistency error in {quantity}: {lhs} vs {rhs} (tolerance {tolerance})")]
    Consistency {
        quantity: String,
        lhs: f64,
        rhs: f64,
        tolerance: f64,
    },
    /// Formal power series operation not defined for these coefficients.
    #[error("series error: {0}")]
    Series(String),
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
