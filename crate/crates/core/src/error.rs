use thiserror::Error;

/// Errors raised by the library.
///
/// `Structure` is reserved for malformed inputs (tables that are not total,
/// out-of-range indices); axiom violations are reported as data, not errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WittError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("malformed structure: {0}")]
    Structure(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("input too large: {what} = {value} exceeds bound {bound}")]
    Size {
        what: &'static str,
        value: u64,
        bound: u64,
    },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal invariant broken: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, WittError>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(WittError::Domain(msg.into()))
}
