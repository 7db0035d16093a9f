use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("line bundle does not descend: {0}")]
    NoDescent(String),
    #[error("expected a type {expected} instance, got {got}")]
    WrongFamily { expected: char, got: String },
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("content total {content} does not match {boxes} boxes")]
    ContentMismatch { boxes: usize, content: usize },
    #[error("unsupported tuple-length profile {0:?}")]
    UnsupportedProfile(Vec<usize>),
    #[error("invalid monomial: {0}")]
    InvalidMonomial(String),
    #[error("matrix has {width} columns but a factor of length {len} was evaluated")]
    MatrixWidth { width: usize, len: usize },
    #[error("graph error: {0}")]
    Graph(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(
        "budget exceeded: {products} products x {dim} basis vectors = {entries} entries (limit {limit})"
    )]
    Budget {
        products: u128,
        dim: usize,
        entries: u128,
        limit: u128,
    },
    #[error("certificate search failed: {0}")]
    Certificate(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
