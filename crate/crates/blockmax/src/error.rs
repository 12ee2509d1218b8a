use thiserror::Error;

/// Errors produced by the estimation and simulation routines.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument left the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A structurally invalid argument (bad grid, bad bracket, bad model spec).
    #[error("invalid argument: {0}")]
    Argument(String),

    /// All sample values are tied; the likelihood has no finite maximizer.
    #[error("degenerate sample: all {k} values equal {value}")]
    DegenerateSample { k: usize, value: f64 },

    /// The root bracket could not be established after repeated expansion.
    #[error("solver failure: no sign change in bracket [{lo}, {hi}] after {expansions} expansions")]
    BracketExhausted { lo: f64, hi: f64, expansions: usize },

    /// Too many replications of a study cell failed to produce an estimate.
    #[error("study cell invalid: {failures} of {reps} replications failed for {cell}")]
    CellInvalid {
        cell: String,
        failures: usize,
        reps: usize,
    },

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }
}
