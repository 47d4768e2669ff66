//! Binary gender variants for Spanish sentences.
//!
//! The pipeline: POS-tagged sentences are matched against whole-sequence
//! templates ([`patterns`]), matched words are rewritten into the opposite
//! gender ([`morph`]), the results become a gender-parallel corpus
//! ([`corpus`]), and a linear classifier learns to tell re-genderable
//! sentences from neutral ones ([`classifier`]). [`eval`] scores both.

pub mod classifier;
pub mod corpus;
pub mod error;
pub mod eval;
pub mod morph;
pub mod patterns;
pub mod synth;
pub mod tagset;

pub use classifier::{extract_features, fit_feature_space, ClassifierModel, FeatureConfig, FeatureSpace, Hyperparams, SparseVector};
pub use corpus::{ParallelRecord, ReadMode, Split, SplitSpec, TaggedReader};
pub use error::{Error, Result};
pub use eval::{classifier_report, corpus_error_report, word_error_count, ClassReport, ErrorReport};
pub use morph::{rewrite_sentence, rewrite_word, ExceptionLexicon, RewriteOutcome, Rewriter};
pub use patterns::{classify_sentence, load_patterns, MatchResult, Pattern, PatternSet};
pub use tagset::{Category, GenderClass, PosTag, TaggedSentence, Token};
