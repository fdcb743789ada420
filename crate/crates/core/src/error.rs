use thiserror::Error;

/// Failures shared by every module of the crate.
///
/// `Domain` is a mathematically invalid input (a singular matrix, a zero
/// inverse, a rational point fed to the Gauss map); `Usage` is a call outside
/// the supported parameter range or with mismatched operands.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Usage(msg.into()))
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
