//! TF-IDF features over character and word n-grams.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::morph::Rewriter;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeatureConfig {
    pub char_min: usize,
    pub char_max: usize,
    /// Most frequent character n-grams kept.
    pub char_cap: usize,
    pub word_min: usize,
    pub word_max: usize,
}

impl Default for FeatureConfig {
    fn default() -> Self {
        FeatureConfig {
            char_min: 4,
            char_max: 7,
            char_cap: 20_000,
            word_min: 1,
            word_max: 3,
        }
    }
}

/// Sparse vector with strictly increasing column indices.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SparseVector {
    entries: Vec<(u32, f64)>,
}

impl SparseVector {
    /// Builds a vector from unsorted entries; duplicate columns are summed.
    pub fn from_entries(mut entries: Vec<(u32, f64)>) -> Self {
        entries.sort_by_key(|&(col, _)| col);
        let mut merged: Vec<(u32, f64)> = Vec::with_capacity(entries.len());
        for (col, w) in entries {
            match merged.last_mut() {
                Some(last) if last.0 == col => last.1 += w,
                _ => merged.push((col, w)),
            }
        }
        SparseVector { entries: merged }
    }

    pub fn entries(&self) -> &[(u32, f64)] {
        &self.entries
    }

    pub fn get(&self, col: u32) -> f64 {
        self.entries
            .binary_search_by_key(&col, |&(c, _)| c)
            .map(|i| self.entries[i].1)
            .unwrap_or(0.0)
    }

    pub fn dot(&self, dense: &[f64]) -> f64 {
        self.entries
            .iter()
            .map(|&(col, w)| dense[col as usize] * w)
            .sum()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }
}

/// Vocabularies and idf weights fitted on a training corpus.
///
/// Column layout: character n-grams, then word n-grams, then one column for
/// the gendered-word flag.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeatureSpace {
    config: FeatureConfig,
    /// Character n-grams in column order.
    char_terms: Vec<String>,
    word_terms: Vec<String>,
    /// One weight per char and word column.
    idf: Vec<f64>,
    #[serde(skip)]
    index: HashMap<String, u32>,
}

fn char_ngrams<'t>(
    text: &'t str,
    min: usize,
    max: usize,
    mut emit: impl FnMut(&'t str),
) {
    let bounds: Vec<usize> = text
        .char_indices()
        .map(|(i, _)| i)
        .chain(std::iter::once(text.len()))
        .collect();
    let n_chars = bounds.len() - 1;
    for n in min..=max {
        if n > n_chars {
            break;
        }
        for start in 0..=n_chars - n {
            emit(&text[bounds[start]..bounds[start + n]]);
        }
    }
}

fn word_ngrams(text: &str, min: usize, max: usize, mut emit: impl FnMut(String)) {
    let words: Vec<&str> = text.split_whitespace().collect();
    for n in min..=max {
        if n > words.len() {
            break;
        }
        for window in words.windows(n) {
            emit(window.join(" "));
        }
    }
}

#[derive(Default)]
struct TermStats {
    count: u64,
    df: u64,
    last_doc: usize,
}

fn count_terms(stats: &mut HashMap<String, TermStats>, term: &str, doc: usize) {
    let entry = match stats.get_mut(term) {
        Some(e) => e,
        None => stats.entry(term.to_owned()).or_insert(TermStats {
            count: 0,
            df: 0,
            last_doc: usize::MAX,
        }),
    };
    entry.count += 1;
    if entry.last_doc != doc {
        entry.last_doc = doc;
        entry.df += 1;
    }
}

fn smoothed_idf(docs: usize, df: u64) -> f64 {
    ((1.0 + docs as f64) / (1.0 + df as f64)).ln() + 1.0
}

impl FeatureSpace {
    /// Fits vocabularies and idf on `texts` with the default configuration.
    pub fn fit<S: AsRef<str>>(texts: &[S]) -> Result<Self> {
        FeatureSpace::fit_with(texts, FeatureConfig::default())
    }

    pub fn fit_with<S: AsRef<str>>(texts: &[S], config: FeatureConfig) -> Result<Self> {
        if texts.iter().all(|t| t.as_ref().trim().is_empty()) {
            return Err(Error::EmptyCorpus);
        }
        let docs = texts.len();
        let mut char_stats: HashMap<String, TermStats> = HashMap::new();
        let mut word_stats: HashMap<String, TermStats> = HashMap::new();
        for (doc, text) in texts.iter().enumerate() {
            let lower = text.as_ref().to_lowercase();
            char_ngrams(&lower, config.char_min, config.char_max, |g| {
                count_terms(&mut char_stats, g, doc)
            });
            word_ngrams(&lower, config.word_min, config.word_max, |g| {
                count_terms(&mut word_stats, &g, doc)
            });
        }

        let mut chars: Vec<(String, TermStats)> = char_stats.into_iter().collect();
        chars.sort_by(|a, b| b.1.count.cmp(&a.1.count).then_with(|| a.0.cmp(&b.0)));
        chars.truncate(config.char_cap);
        chars.sort_by(|a, b| a.0.cmp(&b.0));

        let mut words: Vec<(String, TermStats)> = word_stats.into_iter().collect();
        words.sort_by(|a, b| a.0.cmp(&b.0));

        let idf = chars
            .iter()
            .chain(words.iter())
            .map(|(_, s)| smoothed_idf(docs, s.df))
            .collect();
        let mut space = FeatureSpace {
            config,
            char_terms: chars.into_iter().map(|(t, _)| t).collect(),
            word_terms: words.into_iter().map(|(t, _)| t).collect(),
            idf,
            index: HashMap::new(),
        };
        space.build_index();
        Ok(space)
    }

    /// Rebuilds the lookup table after deserialization.
    pub(crate) fn build_index(&mut self) {
        // Character and word n-grams can coincide ("hola" is both), so the
        // word block is keyed with a leading NUL.
        self.index = self
            .char_terms
            .iter()
            .cloned()
            .chain(self.word_terms.iter().map(|w| format!("\0{w}")))
            .enumerate()
            .map(|(i, t)| (t, i as u32))
            .collect();
    }

    pub fn config(&self) -> FeatureConfig {
        self.config
    }

    pub fn char_terms(&self) -> &[String] {
        &self.char_terms
    }

    pub fn word_terms(&self) -> &[String] {
        &self.word_terms
    }

    pub fn idf(&self) -> &[f64] {
        &self.idf
    }

    pub fn char_index(&self, term: &str) -> Option<u32> {
        self.index.get(term).copied().filter(|&i| (i as usize) < self.char_terms.len())
    }

    pub fn word_index(&self, term: &str) -> Option<u32> {
        self.index.get(&format!("\0{term}")).copied()
    }

    /// Column of the gendered-word flag.
    pub fn morph_column(&self) -> u32 {
        (self.char_terms.len() + self.word_terms.len()) as u32
    }

    /// Total number of columns.
    pub fn dimension(&self) -> usize {
        self.char_terms.len() + self.word_terms.len() + 1
    }

    /// TF-IDF features of `text`, each block L2-normalised, plus the flag
    /// column set to 1 when some whitespace token is a gendered word.
    pub fn extract(&self, text: &str, rewriter: &Rewriter) -> SparseVector {
        let lower = text.to_lowercase();

        let mut char_counts: BTreeMap<u32, f64> = BTreeMap::new();
        char_ngrams(&lower, self.config.char_min, self.config.char_max, |g| {
            if let Some(col) = self.char_index(g) {
                *char_counts.entry(col).or_default() += 1.0;
            }
        });
        let mut word_counts: BTreeMap<u32, f64> = BTreeMap::new();
        let mut key = String::new();
        word_ngrams(&lower, self.config.word_min, self.config.word_max, |g| {
            key.clear();
            key.push('\0');
            key.push_str(&g);
            if let Some(&col) = self.index.get(&key) {
                *word_counts.entry(col).or_default() += 1.0;
            }
        });

        let mut entries = Vec::with_capacity(char_counts.len() + word_counts.len() + 1);
        for block in [char_counts, word_counts] {
            let weighted: Vec<(u32, f64)> = block
                .into_iter()
                .map(|(col, tf)| (col, tf * self.idf[col as usize]))
                .collect();
            let norm = weighted.iter().map(|(_, w)| w * w).sum::<f64>().sqrt();
            if norm > 0.0 {
                entries.extend(weighted.into_iter().map(|(c, w)| (c, w / norm)));
            }
        }
        if text.split_whitespace().any(|w| rewriter.is_gendered_word(w)) {
            entries.push((self.morph_column(), 1.0));
        }
        SparseVector::from_entries(entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn short_text_has_only_one_char_ngram() {
        let space = FeatureSpace::fit(&["hola"]).unwrap();
        assert_eq!(space.char_terms(), ["hola"]);
        assert_eq!(space.word_terms(), ["hola"]);
        assert_eq!(space.dimension(), 3);
    }

    #[test]
    fn word_ngrams_of_two_word_text() {
        let space = FeatureSpace::fit(&["lo siento"]).unwrap();
        let mut words = space.word_terms().to_vec();
        words.sort();
        assert_eq!(words, ["lo", "lo siento", "siento"]);
    }

    #[test]
    fn char_ngrams_count_characters_not_bytes() {
        let mut grams = Vec::new();
        char_ngrams("está", 4, 7, |g| grams.push(g.to_owned()));
        assert_eq!(grams, ["está"]);
    }

    #[test]
    fn empty_corpus_is_an_error() {
        assert!(matches!(FeatureSpace::fit::<&str>(&[]), Err(Error::EmptyCorpus)));
        assert!(matches!(FeatureSpace::fit(&["", "  "]), Err(Error::EmptyCorpus)));
    }

    #[test]
    fn char_cap_keeps_the_most_frequent() {
        // 30 000 distinct 4-letter documents; the first 20 000 appear twice.
        let letters: Vec<char> = "abcdefghijklmnopqrstuvwxyz".chars().collect();
        let term = |i: usize| -> String {
            let mut i = i;
            (0..4)
                .map(|_| {
                    let c = letters[i % 26];
                    i /= 26;
                    c
                })
                .collect()
        };
        let mut docs: Vec<String> = (0..30_000).map(term).collect();
        docs.extend((0..20_000).map(term));
        let space = FeatureSpace::fit(&docs).unwrap();
        assert_eq!(space.char_terms().len(), 20_000);
        for i in (0..20_000).step_by(997) {
            assert!(space.char_index(&term(i)).is_some());
        }
        for i in (20_000..30_000).step_by(331) {
            assert!(space.char_index(&term(i)).is_none());
        }
    }

    #[test]
    fn idf_is_smoothed_and_positive() {
        let space = FeatureSpace::fit(&["lo veo", "la veo"]).unwrap();
        let veo = space.word_index("veo").unwrap() as usize;
        let lo = space.word_index("lo").unwrap() as usize;
        assert!((space.idf()[veo] - 1.0).abs() < 1e-15);
        assert!((space.idf()[lo] - ((3.0f64 / 2.0).ln() + 1.0)).abs() < 1e-15);
        assert!(space.idf().iter().all(|w| w.is_finite() && *w > 0.0));
    }

    #[test]
    fn extraction_sets_morph_flag() {
        let rw = Rewriter::default();
        let space = FeatureSpace::fit(&["estoy cansado", "eso es"]).unwrap();
        let m = space.morph_column();
        assert_eq!(space.extract("estoy cansado", &rw).get(m), 1.0);
        assert_eq!(space.extract("eso es", &rw).get(m), 0.0);
        let empty = space.extract("", &rw);
        assert_eq!(empty.nnz(), 0);
        assert_eq!(empty.get(m), 0.0);
    }

    #[test]
    fn blocks_are_unit_norm() {
        let rw = Rewriter::default();
        let texts = ["estoy muy cansado", "lo veo", "eso es bueno"];
        let space = FeatureSpace::fit(&texts).unwrap();
        let chars = space.char_terms().len() as u32;
        for t in texts {
            let v = space.extract(t, &rw);
            let block_norm = |range: std::ops::Range<u32>| {
                v.entries()
                    .iter()
                    .filter(|(c, _)| range.contains(c))
                    .map(|(_, w)| w * w)
                    .sum::<f64>()
                    .sqrt()
            };
            assert!((block_norm(0..chars) - 1.0).abs() < 1e-12);
            assert!((block_norm(chars..space.morph_column()) - 1.0).abs() < 1e-12);
            assert!(v.entries().iter().all(|(c, _)| (*c as usize) < space.dimension()));
        }
    }

    #[test]
    fn out_of_vocabulary_text_has_empty_blocks() {
        let rw = Rewriter::default();
        let space = FeatureSpace::fit(&["hola"]).unwrap();
        assert_eq!(space.extract("zzzz", &rw).nnz(), 0);
    }

    #[test]
    fn sparse_vector_merges_duplicates() {
        let v = SparseVector::from_entries(vec![(3, 1.0), (1, 2.0), (3, 0.5)]);
        assert_eq!(v.entries(), &[(1, 2.0), (3, 1.5)]);
        assert_eq!(v.dot(&[0.0, 1.0, 0.0, 2.0]), 5.0);
    }
}
