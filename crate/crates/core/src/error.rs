use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at token {token:?}: {reason}")]
    Parse { token: String, reason: String },

    #[error("pointer {code} out of range for n = {n} (valid codes are 1..={max})", max = .n.saturating_sub(1))]
    PointerOutOfRange { code: usize, n: usize },

    #[error("pointers must be distinct, got {0} twice")]
    SamePointer(usize),

    #[error("cds is not applicable: pointers {p} and {q} do not interlock")]
    NotApplicable { p: usize, q: usize },

    /// The occurrence matcher found zero or several templates for an interlocking pair.
    #[error("template matcher found {matches} matching cases for pointers {p} and {q}")]
    TemplateMismatch { p: usize, q: usize, matches: usize },

    #[error("permutation {0} is not a cds fixed point")]
    NotFixedPoint(String),

    #[error("{{{0}, {1}}} is not an edge")]
    NotAnEdge(String, String),

    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("size bound exceeded: {what} is {actual}, limit is {limit}")]
    BoundExceeded { what: &'static str, actual: usize, limit: usize },

    #[error("position is not terminal: {0} edges remain")]
    EdgesRemain(usize),

    #[error("argument out of range: {0}")]
    Range(String),

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("cache file: rejected line(s) {lines:?}; first problem: {reason}")]
    CacheLines { lines: Vec<usize>, reason: String },

    #[error("cache file: {0}")]
    CacheFormat(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn parse(token: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Parse { token: token.into(), reason: reason.into() }
    }

    /// True for refusals caused by configured size limits rather than bad input.
    pub fn is_bound(&self) -> bool {
        matches!(self, Error::BoundExceeded { .. })
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
