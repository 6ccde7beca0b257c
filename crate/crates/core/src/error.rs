use std::path::PathBuf;

use crate::frontend::Language;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("unsupported language: {0}")]
    UnsupportedLanguage(String),

    #[error("failed to parse {language} source `{id}`")]
    ParseFailure { language: Language, id: String },

    #[error("source `{0}` is not valid UTF-8")]
    InvalidUtf8(String),

    #[error("exact GED budget exceeded: {nodes} nodes (limit {limit})")]
    BudgetExceeded { nodes: usize, limit: usize },

    #[error("exact GED search gave up after {0} expansions")]
    SearchExhausted(u64),

    #[error("oracle input too large: {0} nodes (at most 8 per graph)")]
    OracleTooLarge(usize),

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("need at least {needed} values, got {got}")]
    InsufficientSample { needed: usize, got: usize },

    #[error("degenerate variance: {0}")]
    DegenerateVariance(&'static str),

    #[error("corpus `{0}` contains no valid submissions")]
    EmptyCorpus(PathBuf),

    #[error("no evaluation triplets could be built: {0}")]
    NoTriplets(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid scores table: {0}")]
    InvalidScores(String),

    #[error(transparent)]
    ThreadPool(#[from] rayon::ThreadPoolBuildError),

    #[error("I/O error on `{path}`: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
