use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed JSON at line {line}: {message}")]
    Json { line: usize, message: String },

    #[error("missing field '{field}' at line {line}")]
    MissingField { field: &'static str, line: usize },

    #[error("duplicate id '{0}'")]
    DuplicateId(String),

    #[error("empty document list")]
    EmptyCorpus,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown extractor '{0}'")]
    UnknownExtractor(String),

    #[error("{0}: embedding provider required")]
    ProviderRequired(String),

    #[error("graph has no nodes")]
    EmptyGraph,

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("zero vector has no direction")]
    ZeroVector,

    #[error("embedding file line {line}: {message}")]
    EmbeddingFormat { line: usize, message: String },

    #[error("missing embedding for '{0}'")]
    MissingEmbedding(String),

    #[error("embedding provider failed: {0}")]
    Provider(String),

    #[error("prediction id '{0}' not found in corpus")]
    UnknownPredictionId(String),

    #[error("duplicate prediction for id '{0}'")]
    DuplicatePrediction(String),

    #[error("missing split file {0}")]
    MissingSplitFile(PathBuf),

    #[error("train tuple contains the test language '{0}'")]
    TestLanguageInTrain(String),

    #[error("missing report for train={train} test={test}")]
    MissingReport { train: String, test: String },

    #[error("matrix is not square: {rows} rows, row {row} has {cols} columns")]
    NotSquare { rows: usize, row: usize, cols: usize },

    #[error("{0}")]
    Format(String),
}

impl Error {
    /// Errors caused by how the tool was invoked rather than by the data.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::UnknownExtractor(_) | Error::ProviderRequired(_))
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}
