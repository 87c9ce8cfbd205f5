use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error(
        "series `{series}` did not converge after {terms} terms (partial sum {partial_sum:e})"
    )]
    Convergence {
        series: &'static str,
        partial_sum: f64,
        terms: usize,
    },

    #[error("index {index} out of range (max {max})")]
    OutOfRange { index: usize, max: usize },

    #[error("data error: {0}")]
    Data(String),

    #[error("no root found: {0}")]
    NoRoot(String),

    #[error("observation {index}: {source}")]
    AtObservation {
        index: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True when the failure is a series or solver that ran out of iterations.
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::Convergence { .. } | Error::NoRoot(_) => true,
            Error::AtObservation { source, .. } => source.is_numerical(),
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
