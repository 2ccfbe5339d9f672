use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The quantile of 0 or 1 was requested.
    #[error("quantile of {0} is infinite")]
    InfiniteQuantile(f64),

    /// A target value cannot be reached; `lo..=hi` is what can.
    #[error("{what} = {value} is outside the achievable range [{lo}, {hi}]")]
    Range {
        what: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("numerical failure in {routine}: {detail}")]
    Numerical {
        routine: &'static str,
        detail: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Domain(msg()))
    }
}
