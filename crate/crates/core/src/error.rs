use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("parameter N must be nonzero")]
    ZeroParameter,
    #[error("cannot parse scalar from {0:?}")]
    ScalarParse(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("arity mismatch: left side has {left} points, right side has {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("{fine} is not refined by {coarse}")]
    NotCoarsening { fine: String, coarse: String },
    #[error("nothing to rotate: the {0} row is empty")]
    EmptyRotation(&'static str),
    #[error("tensor with {entries} entries exceeds the cap of {cap}")]
    MemoryCap { entries: u128, cap: usize },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("vertex {0} is not an inner vertex of degree two")]
    NotContractible(usize),
    #[error("reduction produced a loop at vertex {0}")]
    LoopCreated(usize),
    #[error("matrix must be square and symmetric of size {0}")]
    BadWeightMatrix(usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("rewrite rule does not apply: {0}")]
    RuleNotApplicable(String),
    #[error("search guard of {0} exceeded")]
    GuardExceeded(usize),
    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
