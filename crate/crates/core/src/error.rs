use thiserror::Error;

/// Errors raised by the region computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown axis `{0}`")]
    UnknownAxis(String),

    #[error("axis `{0}` already exists")]
    DuplicateAxis(String),

    #[error("axis sets overlap on `{0}`")]
    OverlappingAxes(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("table is not a probability distribution: {0}")]
    NotNormalized(String),

    #[error("conditioning event {axis}={value} has probability {prob:e}")]
    DegenerateEvent { axis: String, value: usize, prob: f64 },

    #[error("{what} = {value} is outside its domain {domain}")]
    Domain { what: &'static str, value: f64, domain: String },

    #[error("degenerate model: {0}")]
    DegenerateModel(String),

    #[error("solver failed: {0}")]
    Solver(String),

    #[error("cardinality bound violated: {0}")]
    Cardinality(String),

    #[error("Markov structure violated: {0}")]
    Structure(String),

    #[error("curves cannot be compared: {0}")]
    Comparison(String),
}

impl Error {
    pub(crate) fn domain(what: &'static str, value: f64, domain: impl Into<String>) -> Self {
        Error::Domain { what, value, domain: domain.into() }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
