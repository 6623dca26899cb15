use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex labels must be non-empty")]
    EmptyLabel,
    #[error("duplicate vertex label `{0}`")]
    DuplicateVertex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("edge pairs `{0}` with itself; use a loop instead")]
    SelfEdge(String),
    #[error("edge `{0}`-`{1}` is not in the graph")]
    MissingEdge(String, String),
    #[error("edge `{0}`-`{1}` is already in the graph")]
    EdgeExists(String, String),
    #[error("label `{0}` occurs in both graphs")]
    LabelClash(String),
    #[error("invalid family: {0}")]
    InvalidFamily(String),
    #[error("face budget of {budget} faces exceeded")]
    FaceBudget { budget: usize },
    #[error("graph has {count} usable vertices; this routine supports at most {limit}")]
    TooManyVertices { count: usize, limit: usize },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("invalid patch: {0}")]
    InvalidPatch(String),
    #[error("unknown certificate `{0}`")]
    UnknownCertificate(String),
    #[error("collapse oracle failed: {0}")]
    Oracle(String),
    #[error("malformed input: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
