//! Rewriter error rates and classifier precision/recall.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::tagset::GenderClass;

/// Incorrectly converted words between a hypothesis and its reference.
///
/// Equal token counts compare position by position. Otherwise the count is
/// the token-level edit distance (substitutions, insertions, deletions).
pub fn word_error_count(hypothesis: &str, reference: &str) -> usize {
    let hyp: Vec<&str> = hypothesis.split_whitespace().collect();
    let refs: Vec<&str> = reference.split_whitespace().collect();
    if hyp.len() == refs.len() {
        return hyp.iter().zip(&refs).filter(|(h, r)| h != r).count();
    }
    edit_distance(&hyp, &refs)
}

fn edit_distance(a: &[&str], b: &[&str]) -> usize {
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur = vec![0; b.len() + 1];
    for (i, x) in a.iter().enumerate() {
        cur[0] = i + 1;
        for (j, y) in b.iter().enumerate() {
            let sub = prev[j] + usize::from(x != y);
            cur[j + 1] = sub.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// Error counts for one group of sentences.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ErrorCounts {
    pub incorrect_words: u64,
    pub sentences: u64,
    /// Reference words.
    pub words: u64,
}

impl ErrorCounts {
    /// Incorrect words per 100 sentences.
    pub fn per_sentence_pct(&self) -> f64 {
        pct(self.incorrect_words, self.sentences)
    }

    /// Incorrect words per 100 words.
    pub fn per_word_pct(&self) -> f64 {
        pct(self.incorrect_words, self.words)
    }

    pub fn merge(&mut self, other: &ErrorCounts) {
        self.incorrect_words += other.incorrect_words;
        self.sentences += other.sentences;
        self.words += other.words;
    }
}

fn pct(num: u64, den: u64) -> f64 {
    if den == 0 {
        0.0
    } else {
        100.0 * num as f64 / den as f64
    }
}

/// Error rates over a corpus, overall and per sentence type.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ErrorReport {
    pub all: ErrorCounts,
    pub neutral: ErrorCounts,
    pub regenderable: ErrorCounts,
}

impl ErrorReport {
    pub fn per_sentence_pct(&self) -> f64 {
        self.all.per_sentence_pct()
    }

    pub fn per_word_pct(&self) -> f64 {
        self.all.per_word_pct()
    }

    pub fn by_class(&self, label: GenderClass) -> &ErrorCounts {
        match label {
            GenderClass::Neutral => &self.neutral,
            GenderClass::Regenderable => &self.regenderable,
        }
    }

    fn rows(&self) -> [(&'static str, &ErrorCounts); 3] {
        [
            ("all", &self.all),
            ("neutral", &self.neutral),
            ("regenderable", &self.regenderable),
        ]
    }

    /// `key=value` lines with stable names, e.g. `neutral.per_word_pct=0.00`.
    pub fn to_key_values(&self) -> String {
        let mut out = String::new();
        for (name, c) in self.rows() {
            out.push_str(&format!("{name}.sentences={}\n", c.sentences));
            out.push_str(&format!("{name}.words={}\n", c.words));
            out.push_str(&format!("{name}.incorrect_words={}\n", c.incorrect_words));
            out.push_str(&format!("{name}.per_sentence_pct={:.1}\n", c.per_sentence_pct()));
            out.push_str(&format!("{name}.per_word_pct={:.2}\n", c.per_word_pct()));
        }
        out.push_str("alignment=positional_if_equal_length_else_token_edit_distance\n");
        out
    }
}

impl fmt::Display for ErrorReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<14}{:>10}{:>10}{:>11}{:>10}{:>10}",
            "type", "sentences", "words", "incorrect", "%/sent", "%/word"
        )?;
        for (name, c) in self.rows() {
            writeln!(
                f,
                "{:<14}{:>10}{:>10}{:>11}{:>10.1}{:>10.2}",
                name,
                c.sentences,
                c.words,
                c.incorrect_words,
                c.per_sentence_pct(),
                c.per_word_pct()
            )?;
        }
        Ok(())
    }
}

/// Aggregates word errors over `(hypothesis, reference, label)` triples.
pub fn corpus_error_report<I, H, R>(triples: I) -> Result<ErrorReport>
where
    I: IntoIterator<Item = (H, R, GenderClass)>,
    H: AsRef<str>,
    R: AsRef<str>,
{
    let mut report = ErrorReport::default();
    for (hyp, reference, label) in triples {
        let counts = ErrorCounts {
            incorrect_words: word_error_count(hyp.as_ref(), reference.as_ref()) as u64,
            sentences: 1,
            words: reference.as_ref().split_whitespace().count() as u64,
        };
        report.all.merge(&counts);
        match label {
            GenderClass::Neutral => report.neutral.merge(&counts),
            GenderClass::Regenderable => report.regenderable.merge(&counts),
        }
    }
    if report.all.sentences == 0 {
        return Err(Error::EmptyEvaluation);
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassScores {
    pub precision: f64,
    pub recall: f64,
    /// Gold examples of this class.
    pub support: u64,
    /// Times this class was predicted.
    pub predicted: u64,
}

impl ClassScores {
    /// True when the class was never predicted and precision is reported as 0.
    pub fn precision_undefined(&self) -> bool {
        self.predicted == 0
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassReport {
    pub accuracy: f64,
    pub total: u64,
    pub per_class: BTreeMap<GenderClass, ClassScores>,
}

impl ClassReport {
    pub fn class(&self, label: GenderClass) -> &ClassScores {
        &self.per_class[&label]
    }

    pub fn to_key_values(&self) -> String {
        let mut out = format!("total={}\naccuracy={:.4}\n", self.total, self.accuracy);
        for (label, s) in &self.per_class {
            out.push_str(&format!("{label}.support={}\n", s.support));
            out.push_str(&format!("{label}.predicted={}\n", s.predicted));
            out.push_str(&format!("{label}.precision={:.4}\n", s.precision));
            out.push_str(&format!("{label}.recall={:.4}\n", s.recall));
            if s.precision_undefined() {
                out.push_str(&format!("{label}.precision_undefined=true\n"));
            }
        }
        out
    }
}

impl fmt::Display for ClassReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<9}{:>8}{:>8}{:>8}{:>9}", "", "Acc.", "Rec.", "Prec.", "support")?;
        writeln!(
            f,
            "{:<9}{:>7.1}%{:>8}{:>8}{:>9}",
            "Overall",
            100.0 * self.accuracy,
            "-",
            "-",
            self.total
        )?;
        for (label, s) in &self.per_class {
            let prec = if s.precision_undefined() {
                "n/a".to_owned()
            } else {
                format!("{:.1}%", 100.0 * s.precision)
            };
            writeln!(
                f,
                "{:<9}{:>8}{:>7.1}%{:>8}{:>9}",
                label.as_str(),
                "-",
                100.0 * s.recall,
                prec,
                s.support
            )?;
        }
        Ok(())
    }
}

/// Accuracy and per-class precision/recall.
pub fn classifier_report(predictions: &[GenderClass], gold: &[GenderClass]) -> Result<ClassReport> {
    if predictions.len() != gold.len() {
        return Err(Error::LengthMismatch {
            predictions: predictions.len(),
            gold: gold.len(),
        });
    }
    if gold.is_empty() {
        return Err(Error::EmptyEvaluation);
    }
    let total = gold.len() as u64;
    let correct = predictions.iter().zip(gold).filter(|(p, g)| p == g).count() as u64;

    let per_class = [GenderClass::Regenderable, GenderClass::Neutral]
        .into_iter()
        .map(|label| {
            let support = gold.iter().filter(|&&g| g == label).count() as u64;
            let predicted = predictions.iter().filter(|&&p| p == label).count() as u64;
            let hits = predictions
                .iter()
                .zip(gold)
                .filter(|(p, g)| **p == label && **g == label)
                .count() as u64;
            let ratio = |n: u64, d: u64| if d == 0 { 0.0 } else { n as f64 / d as f64 };
            let scores = ClassScores {
                precision: ratio(hits, predicted),
                recall: ratio(hits, support),
                support,
                predicted,
            };
            (label, scores)
        })
        .collect();

    Ok(ClassReport {
        accuracy: correct as f64 / total as f64,
        total,
        per_class,
    })
}
