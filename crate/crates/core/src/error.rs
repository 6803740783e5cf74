use thiserror::Error;

/// Errors produced by the optimizers, benchmark registry and harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid bounds at index {index}: lower {lower} must be < upper {upper}")]
    InvalidBounds {
        index: usize,
        lower: f64,
        upper: f64,
    },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("empty input vector")]
    EmptyInput,

    #[error("{function}: component {index} = {value} is outside the domain")]
    OutOfDomain {
        function: String,
        index: usize,
        value: f64,
    },

    #[error("unknown function '{0}'")]
    UnknownFunction(String),

    #[error("{function} does not support dimension {dimension}")]
    UnsupportedDimension { function: String, dimension: usize },

    #[error("unknown algorithm '{0}'")]
    UnknownAlgorithm(String),

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    #[error("run result carries no trace")]
    NoTrace,

    #[error("empty input: {0}")]
    EmptyReport(&'static str),

    #[error("I/O failure: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization failure: {0}")]
    Serialization(String),
}

impl Error {
    /// True for errors caused by bad user input rather than a failure
    /// while running.
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            Error::InvalidConfig(_)
                | Error::InvalidBounds { .. }
                | Error::DimensionMismatch { .. }
                | Error::UnknownFunction(_)
                | Error::UnsupportedDimension { .. }
                | Error::UnknownAlgorithm(_)
        )
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Serialization(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Serialization(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
