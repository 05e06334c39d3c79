use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("a complete graph needs at least one vertex")]
    EmptyGraph,
    #[error("expected {expected} edge colors for n = {n}, got {got}")]
    EdgeCountMismatch { n: usize, expected: usize, got: usize },
    #[error("vertex {vertex} is out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex {0} appears more than once in the subset")]
    RepeatedVertex(usize),
    #[error("a subset needs at least 2 vertices, got {0}")]
    SubsetTooSmall(usize),
    #[error("invalid local property (k = {k}, ell = {ell}): {reason}")]
    InvalidSpec {
        k: usize,
        ell: usize,
        reason: &'static str,
    },
    #[error("subset size k = {k} exceeds the {size} available elements")]
    KExceedsSize { k: usize, size: usize },
    #[error("color map is not a bijection on 0..{0}")]
    NotABijection(usize),
    #[error("vertex map is not a permutation of 0..{0}")]
    NotAPermutation(usize),
    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),
    #[error("invalid theorem parameters (k = {k}, m = {m}): need k > m >= 2")]
    InvalidParams { k: usize, m: usize },
    #[error("set needs at least {need} elements, got {got}")]
    SetTooSmall { need: usize, got: usize },
    #[error("integer set must be strictly increasing")]
    NotStrictlyIncreasing,
    #[error("duplicate point ({0}, {1})")]
    DuplicatePoint(i64, i64),
    #[error("invalid set system: {0}")]
    InvalidSetSystem(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
