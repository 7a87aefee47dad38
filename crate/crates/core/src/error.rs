use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid token `{token}` (expected `{alphabet}<i>`, `{alphabet}<i>^-1` or `e`)")]
    Token { token: String, alphabet: char },

    #[error("{0}")]
    Parse(String),

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("generator index {index} exceeds rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("constant term must be {expected}, found {found}")]
    ConstantTerm { expected: String, found: String },

    #[error("no termination after {iterations} iterations (last nonzero degree {last_degree:?})")]
    NonTermination {
        iterations: usize,
        last_degree: Option<usize>,
    },

    #[error("curve is not simple: {0}")]
    NotSimple(String),

    #[error("word has odd orientation parity: {0}")]
    OddParity(String),

    #[error("{0}")]
    InvalidSurface(String),

    #[error("{0}")]
    Invalid(String),

    #[error("{0}")]
    Json(String),
}

impl Error {
    /// Short stable identifier, used by the CLI for machine-parsable errors.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Token { .. } | Error::Parse(_) => "parse",
            Error::RankMismatch { .. } => "rank-mismatch",
            Error::OrderMismatch { .. } => "order-mismatch",
            Error::IndexOutOfRange { .. } => "index-out-of-range",
            Error::ConstantTerm { .. } => "constant-term",
            Error::NonTermination { .. } => "non-termination",
            Error::NotSimple(_) => "not-simple",
            Error::OddParity(_) => "odd-parity",
            Error::InvalidSurface(_) => "invalid-surface",
            Error::Invalid(_) => "invalid-argument",
            Error::Json(_) => "json",
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
