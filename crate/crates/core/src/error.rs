use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unstable moduli space: 2g - 2 + n = {} <= 0 for (g, n) = ({g}, {n})", 2 * (*g as i64) - 2 + (*n as i64))]
    Unstable { g: u32, n: usize },

    #[error("enumeration of (g, n) = ({g}, {n}) exceeds dimension limit {limit}")]
    TooLarge { g: u32, n: usize, limit: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("ambient mismatch: ({0}, {1}) vs ({2}, {3})")]
    AmbientMismatch(u32, usize, u32, usize),

    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("product of two boundary strata on a space of dimension {dim} exceeds the supported limit {limit}")]
    ProductBeyondCapability { dim: usize, limit: usize },

    #[error("invalid double ramification data: {0}")]
    InvalidProblem(String),

    #[error("r = {r} is below the polynomiality bound (need r > {bound})")]
    RBelowBound { r: u64, bound: u64 },

    #[error("polynomiality violated: {0}")]
    PolynomialityViolation(String),

    #[error("invalid topological type: {0}")]
    InvalidTopologicalType(String),

    #[error("invalid bipartite graph: {0}")]
    InvalidBipartite(String),

    #[error("truncation: {0}")]
    Truncation(String),

    #[error("invalid insertion: {0}")]
    InvalidInsertion(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
