use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// Search loops hit degenerate parameters constantly, so every failure mode
/// (including division by zero) is a value rather than a panic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero: {0}")]
    DivisionByZero(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("incompatible quadratic fields: sqrt({left}) and sqrt({right})")]
    IncompatibleField { left: String, right: String },

    #[error("trivial input: {variable} = {value} (must avoid 0, 1 and -1)")]
    TrivialInput { variable: String, value: String },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("family {family}: {reason}")]
    FamilyDomain { family: String, reason: String },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn trivial(variable: impl Into<String>, value: impl ToString) -> Self {
        Error::TrivialInput {
            variable: variable.into(),
            value: value.to_string(),
        }
    }

    pub(crate) fn family(family: &str, reason: impl Into<String>) -> Self {
        Error::FamilyDomain {
            family: family.to_string(),
            reason: reason.into(),
        }
    }
}
