use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} = {value} out of range [{min}, {max}]")]
    Range {
        what: &'static str,
        value: i64,
        min: i64,
        max: i64,
    },
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("{what}: n = {n} exceeds the exact-enumeration cap {max}")]
    Capacity { what: &'static str, n: usize, max: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("power-law fit failed: {0}")]
    Fit(String),
    #[error("edge density undefined for a graph with {0} vertices")]
    UndefinedDensity(usize),
    #[error("conditioning event has probability zero: {0}")]
    ZeroProbability(String),
    #[error("degenerate design: {0}")]
    DegenerateDesign(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn range(what: &'static str, value: usize, min: usize, max: usize) -> Self {
        Error::Range {
            what,
            value: value as i64,
            min: min as i64,
            max: max as i64,
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }
}
