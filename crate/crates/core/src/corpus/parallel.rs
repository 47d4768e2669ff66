use std::fmt;
use std::io::BufRead;

use crate::error::{Error, Result};
use crate::morph::{ExceptionLexicon, Rewriter};
use crate::patterns::{MatchResult, PatternSet};
use crate::tagset::{Category, GenderClass, TaggedSentence};

/// One source/target pair of the gender-parallel corpus.
///
/// Neutral records have identical sides; re-genderable records differ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParallelRecord {
    source: String,
    target: String,
    label: GenderClass,
    category: Option<Category>,
}

impl ParallelRecord {
    /// Builds a record, checking the label against source/target equality.
    pub fn new(
        source: impl Into<String>,
        target: impl Into<String>,
        label: GenderClass,
        category: Option<Category>,
    ) -> Option<Self> {
        let (source, target) = (source.into(), target.into());
        let consistent = match label {
            GenderClass::Neutral => source == target,
            GenderClass::Regenderable => source != target,
        };
        consistent.then_some(ParallelRecord {
            source,
            target,
            label,
            category,
        })
    }

    pub fn neutral(text: impl Into<String>) -> Self {
        let text = text.into();
        ParallelRecord {
            source: text.clone(),
            target: text,
            label: GenderClass::Neutral,
            category: None,
        }
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn target(&self) -> &str {
        &self.target
    }

    pub fn label(&self) -> GenderClass {
        self.label
    }

    pub fn category(&self) -> Option<Category> {
        self.category
    }

    /// The record with source and target swapped.
    pub fn reversed(&self) -> Self {
        ParallelRecord {
            source: self.target.clone(),
            target: self.source.clone(),
            label: self.label,
            category: self.category,
        }
    }

    /// True if `other` is this record read in the opposite direction.
    pub fn mirrors(&self, other: &ParallelRecord) -> bool {
        self.label == GenderClass::Regenderable
            && other.label == GenderClass::Regenderable
            && self.source == other.target
            && self.target == other.source
    }

    /// One TSV line without the trailing newline. With `prefix_label` the
    /// source field starts with the label token (`G Lo veo .`).
    pub fn to_tsv(&self, prefix_label: bool) -> String {
        if prefix_label {
            format!("{} {}\t{}\t{}", self.label, self.source, self.target, self.label)
        } else {
            format!("{}\t{}\t{}", self.source, self.target, self.label)
        }
    }

    /// Parses one TSV line. `prefixed` strips a leading label token from the
    /// source field.
    pub fn from_tsv(line: &str, line_no: usize, prefixed: bool) -> Result<Self> {
        let err = |message: &str| Error::MalformedRecord {
            line: line_no,
            content: line.to_owned(),
            message: message.to_owned(),
        };
        let line = line.trim_end_matches(['\n', '\r']);
        let fields: Vec<&str> = line.split('\t').collect();
        let [source, target, label] = fields[..] else {
            return Err(err("expected source<TAB>target<TAB>label"));
        };
        let label: GenderClass = label.trim().parse().map_err(|_| err("label must be G or N"))?;
        let source = if prefixed {
            source
                .strip_prefix(label.as_str())
                .and_then(|s| s.strip_prefix(' '))
                .ok_or_else(|| err("source does not start with its label token"))?
        } else {
            source
        };
        ParallelRecord::new(source, target, label, None).ok_or_else(|| match label {
            GenderClass::Neutral => err("neutral record with differing source and target"),
            GenderClass::Regenderable => err("re-genderable record with identical sides"),
        })
    }
}

impl fmt::Display for ParallelRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_tsv(false))
    }
}

/// Streams records from Parallel TSV text.
pub fn read_parallel_tsv<R: BufRead>(
    input: R,
    prefixed: bool,
) -> impl Iterator<Item = Result<ParallelRecord>> {
    input
        .lines()
        .enumerate()
        .filter(|(_, line)| !matches!(line, Ok(l) if l.trim().is_empty()))
        .map(move |(idx, line)| ParallelRecord::from_tsv(&line?, idx + 1, prefixed))
}

/// Counts of what a generator produced.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PairingStats {
    pub regenderable: u64,
    pub neutral: u64,
    /// Re-genderable by template, but every position was blocked.
    pub blocked: u64,
    pub unmatched: u64,
}

/// Turns tagged sentences into parallel records.
pub struct ParallelGenerator<'a> {
    patterns: &'a PatternSet,
    rewriter: Rewriter,
    stats: PairingStats,
}

impl<'a> ParallelGenerator<'a> {
    pub fn new(patterns: &'a PatternSet, lexicon: ExceptionLexicon) -> Self {
        ParallelGenerator {
            patterns,
            rewriter: Rewriter::new(lexicon),
            stats: PairingStats::default(),
        }
    }

    pub fn stats(&self) -> PairingStats {
        self.stats
    }

    /// Records for one sentence: both directions for a re-gendered sentence,
    /// a single identity record for a neutral one, nothing if unmatched.
    pub fn records(&mut self, sentence: &TaggedSentence) -> Vec<ParallelRecord> {
        let result = self.patterns.classify(sentence);
        let records = records_for(&self.rewriter, sentence, &result);
        match (&result, records.len()) {
            (MatchResult::Unmatched, _) => self.stats.unmatched += 1,
            (MatchResult::Neutral, _) => self.stats.neutral += 1,
            (MatchResult::Regenderable { .. }, 2) => self.stats.regenderable += 1,
            (MatchResult::Regenderable { .. }, _) => self.stats.blocked += 1,
        }
        records
    }
}

/// Stateless form of [`ParallelGenerator::records`], for callers that
/// classify sentences themselves (e.g. on worker threads).
pub fn records_for(
    rewriter: &Rewriter,
    sentence: &TaggedSentence,
    result: &MatchResult,
) -> Vec<ParallelRecord> {
    match result {
        MatchResult::Unmatched => Vec::new(),
        MatchResult::Neutral => vec![ParallelRecord::neutral(sentence.text())],
        MatchResult::Regenderable { category, .. } => {
            let outcome = rewriter
                .rewrite_sentence(sentence, result)
                .expect("match result computed from this sentence");
            let source = sentence.text();
            let target = outcome.variant.text();
            if outcome.identity() || source == target {
                return vec![ParallelRecord::neutral(source)];
            }
            let forward = ParallelRecord {
                source,
                target,
                label: GenderClass::Regenderable,
                category: Some(*category),
            };
            let backward = forward.reversed();
            vec![forward, backward]
        }
    }
}

/// Lazily generates records for a corpus, in corpus order.
pub fn generate_parallel<'a, I>(
    corpus: I,
    patterns: &'a PatternSet,
    lexicon: &ExceptionLexicon,
) -> impl Iterator<Item = ParallelRecord> + 'a
where
    I: IntoIterator<Item = TaggedSentence>,
    I::IntoIter: 'a,
{
    let mut generator = ParallelGenerator::new(patterns, lexicon.clone());
    corpus
        .into_iter()
        .flat_map(move |sentence| generator.records(&sentence))
}
