use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("empty input")]
    EmptyInput,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: expected {expected} components, found {found}")]
    DimensionMismatch {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("views are not aligned: {0}")]
    Alignment(String),
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("cosine is undefined for a zero-norm vector")]
    DegenerateVector,
    #[error("degenerate view: {0}")]
    DegenerateView(String),
    #[error("no same-category pair exists")]
    WithinEmpty,
    #[error("no cross-category pair exists")]
    CrossEmpty,
    #[error("category `{label}` has {count} exemplar(s), at least 2 are required")]
    InsufficientExemplars { label: String, count: usize },
    #[error("category `{label}` has no other category to contrast with")]
    NoContrast { label: String },
    #[error("no category has at least 2 exemplars")]
    NoEligibleCategories,
    #[error("no row has a same-label partner")]
    NoValidQueries,
    #[error("label `{label}` not found; nearest labels: {}", suggestions.join(", "))]
    NotFound {
        label: String,
        suggestions: Vec<String>,
    },
    #[error("model is unusable: {0}")]
    UnusableModel(String),
    #[error("phoneme `{0}` is outside the inventory")]
    OutOfVocabulary(String),
    #[error("context ({0}, {1}) is unattested and smoothing is disabled")]
    UnattestedContext(String, String),
    #[error("series `{0}` has zero variance")]
    ConstantSeries(&'static str),
    #[error("no word type has both a CDI value and a pronunciation")]
    NoOverlap,
    #[error("anchor row {anchor} has no different-label row in the batch")]
    NoNegative { anchor: usize },
    #[error("target phoneme `{symbol}` has zero probability at step {step}")]
    ZeroProbability { symbol: String, step: usize },
    #[error("capacity exceeded: {0}")]
    Capacity(String),
}

impl Error {
    /// Stable machine-readable identifier used in structured error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Io { .. } => "io",
            Error::EmptyInput => "empty_input",
            Error::Parse { .. } => "parse",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::Validation(_) => "validation",
            Error::Alignment(_) => "alignment",
            Error::InsufficientData(_) => "insufficient_data",
            Error::DegenerateInput(_) => "degenerate_input",
            Error::DegenerateVector => "degenerate_vector",
            Error::DegenerateView(_) => "degenerate_view",
            Error::WithinEmpty => "within_empty",
            Error::CrossEmpty => "cross_empty",
            Error::InsufficientExemplars { .. } => "insufficient_exemplars",
            Error::NoContrast { .. } => "no_contrast",
            Error::NoEligibleCategories => "no_eligible_categories",
            Error::NoValidQueries => "no_valid_queries",
            Error::NotFound { .. } => "not_found",
            Error::UnusableModel(_) => "unusable_model",
            Error::OutOfVocabulary(_) => "out_of_vocabulary",
            Error::UnattestedContext(..) => "unattested_context",
            Error::ConstantSeries(_) => "constant_series",
            Error::NoOverlap => "no_overlap",
            Error::NoNegative { .. } => "no_negative",
            Error::ZeroProbability { .. } => "zero_probability",
            Error::Capacity(_) => "capacity",
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
