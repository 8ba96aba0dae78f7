use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{op}: argument outside domain ({detail})")]
    Domain { op: &'static str, detail: String },

    #[error("{op}: result overflows beyond threshold {threshold} (argument {arg})")]
    Range {
        op: &'static str,
        threshold: f64,
        arg: f64,
    },

    #[error("{op}: singular point ({detail})")]
    Singular { op: &'static str, detail: String },

    #[error("{op}: branch ambiguity at {detail}")]
    Branch { op: &'static str, detail: String },

    #[error("{op}: no convergence ({detail})")]
    NoConvergence { op: &'static str, detail: String },

    #[error("{op}: non-finite value at {location}")]
    Evaluation { op: &'static str, location: f64 },

    #[error("{op}: degenerate matching ({detail})")]
    Degenerate { op: &'static str, detail: String },

    #[error("{op}: energy {energy} is outside the regime of validity ({detail})")]
    Regime {
        op: &'static str,
        energy: f64,
        detail: String,
    },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            op,
            detail: detail.into(),
        }
    }

    pub(crate) fn no_convergence(op: &'static str, detail: impl Into<String>) -> Self {
        Error::NoConvergence {
            op,
            detail: detail.into(),
        }
    }

    /// True for failures of an iterative method, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NoConvergence { .. }
                | Error::Evaluation { .. }
                | Error::Range { .. }
                | Error::Degenerate { .. }
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
