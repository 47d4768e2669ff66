use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid token surface {0:?}: must be non-empty and contain no whitespace")]
    InvalidToken(String),

    #[error("invalid label {0:?}: expected G or N")]
    InvalidLabel(String),

    #[error("pattern file line {line}: {message}: {content:?}")]
    PatternSyntax {
        line: usize,
        content: String,
        message: String,
    },

    #[error("pattern file line {line}: unknown category {name:?}")]
    UnknownCategory { line: usize, name: String },

    #[error("lexicon file line {line}: {message}: {content:?}")]
    LexiconSyntax {
        line: usize,
        content: String,
        message: String,
    },

    #[error("line {line}: malformed tagged line {content:?}: expected token<TAB>tag")]
    MalformedTaggedLine { line: usize, content: String },

    #[error("line {line}: malformed parallel record {content:?}: {message}")]
    MalformedRecord {
        line: usize,
        content: String,
        message: String,
    },

    #[error("match position {position} out of range for sentence of {len} tokens")]
    PositionOutOfRange { position: usize, len: usize },

    #[error("split needs {requested} records but the corpus has {available}")]
    SplitTooLarge { requested: usize, available: usize },

    #[error(
        "cannot fill dev={dev} test={test} exactly while keeping re-gendered pairs together \
         ({pairs} pairs, {singles} single records)"
    )]
    SplitInfeasible {
        dev: usize,
        test: usize,
        pairs: usize,
        singles: usize,
    },

    #[error("cannot fit a feature space on an empty corpus")]
    EmptyCorpus,

    #[error("training data contains a single class ({0}); both G and N are required")]
    SingleClass(crate::tagset::GenderClass),

    #[error("invalid hyperparameter: {0}")]
    InvalidHyperparameter(String),

    #[error("model dimension mismatch: {weights} weights for a {dimension}-column feature space")]
    DimensionMismatch { weights: usize, dimension: usize },

    #[error("unsupported model format version {0}")]
    ModelVersion(u32),

    #[error("model file: {0}")]
    ModelFormat(#[from] serde_json::Error),

    #[error("evaluation input is empty")]
    EmptyEvaluation,

    #[error("predictions ({predictions}) and gold labels ({gold}) differ in length")]
    LengthMismatch { predictions: usize, gold: usize },

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
