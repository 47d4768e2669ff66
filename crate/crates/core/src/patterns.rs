//! POS-sequence templates and sentence classification.
//!
//! A sentence is classified by looking up its complete tag sequence among
//! the loaded templates. Templates are matched whole: a sentence whose tag
//! sequence merely contains a template does not match it.

use std::collections::{HashMap, HashSet};
use std::fmt;

use log::warn;

use crate::error::{Error, Result};
use crate::tagset::{Category, GenderClass, PosTag, TaggedSentence};

/// Template file compiled into the library.
pub const DEFAULT_PATTERNS: &str = include_str!("../data/default_patterns.txt");

/// Demonstratives without gender marking. A sentence that contains one and
/// matches no re-genderable template is neutral ("Eso es bueno").
pub const NEUTRAL_DEMONSTRATIVES: [&str; 3] = ["esto", "eso", "aquello"];

/// Clitic endings that an infinitive can only carry when a pronoun is
/// attached.
const INFINITIVE_CLITIC_SUFFIXES: [&str; 4] = ["los", "las", "lo", "la"];

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pattern {
    tags: Vec<PosTag>,
    polarity: GenderClass,
    category: Category,
    line: usize,
}

impl Pattern {
    pub fn new(tags: Vec<PosTag>, polarity: GenderClass, category: Category) -> Option<Self> {
        if tags.is_empty() {
            return None;
        }
        Some(Pattern {
            tags,
            polarity,
            category,
            line: 0,
        })
    }

    pub fn tags(&self) -> &[PosTag] {
        &self.tags
    }

    pub fn polarity(&self) -> GenderClass {
        self.polarity
    }

    pub fn category(&self) -> Category {
        self.category
    }

    /// Line of the definition this pattern was read from, 0 if built in code.
    pub fn line(&self) -> usize {
        self.line
    }

    /// The tag sequence in file notation, e.g. `PPC-Vfin-FS`.
    pub fn sequence(&self) -> String {
        join_tags(&self.tags)
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.polarity, self.category, self.sequence())
    }
}

fn join_tags(tags: &[PosTag]) -> String {
    tags.iter()
        .map(PosTag::canonical_name)
        .collect::<Vec<_>>()
        .join("-")
}

/// Something the loader noticed and resolved on its own.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LoadWarning {
    /// Same tags and polarity declared twice; the later row was dropped.
    Duplicate { dropped: Pattern, kept: Pattern },
    /// A neutral row has the same tags as a re-genderable row and was dropped.
    PolarityConflict { dropped: Pattern, kept: Pattern },
    /// A re-genderable row with no tag of its category; it can match but
    /// never yields a position to rewrite.
    NoTargetTag(Pattern),
}

impl fmt::Display for LoadWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoadWarning::Duplicate { dropped, kept } => write!(
                f,
                "line {}: `{}` duplicates line {} (`{}`), dropped",
                dropped.line, dropped, kept.line, kept
            ),
            LoadWarning::PolarityConflict { dropped, kept } => write!(
                f,
                "line {}: `{}` conflicts with re-genderable line {} (`{}`), dropped",
                dropped.line, dropped, kept.line, kept
            ),
            LoadWarning::NoTargetTag(p) => write!(
                f,
                "line {}: `{}` contains no {} tag",
                p.line,
                p,
                join_tags(p.category.target_tags())
            ),
        }
    }
}

/// The validated template inventory.
#[derive(Clone, Debug, Default)]
pub struct PatternSet {
    declared: Vec<Pattern>,
    g_patterns: Vec<Pattern>,
    n_patterns: Vec<Pattern>,
    g_index: HashMap<Vec<PosTag>, usize>,
    n_index: HashSet<Vec<PosTag>>,
    warnings: Vec<LoadWarning>,
}

impl PatternSet {
    /// Parses and validates a pattern definition.
    pub fn load(definition: &str) -> Result<Self> {
        let set = PatternSet::parse(definition)?;
        for w in &set.warnings {
            warn!("{w}");
        }
        Ok(set)
    }

    fn parse(definition: &str) -> Result<Self> {
        let mut declared = Vec::new();
        for (idx, raw) in definition.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            declared.push(parse_line(line, raw, content)?);
        }
        Ok(PatternSet::from_declared(declared))
    }

    /// The compiled-in default templates. Their known anomalies are kept in
    /// [`PatternSet::warnings`] but not logged.
    pub fn builtin() -> Self {
        PatternSet::parse(DEFAULT_PATTERNS).expect("built-in pattern file is valid")
    }

    /// Builds a set from patterns in declaration order.
    pub fn from_patterns(patterns: impl IntoIterator<Item = Pattern>) -> Self {
        PatternSet::from_declared(patterns.into_iter().collect())
    }

    fn from_declared(declared: Vec<Pattern>) -> Self {
        let mut set = PatternSet {
            declared,
            ..PatternSet::default()
        };

        for p in set.declared.iter().filter(|p| p.polarity == GenderClass::Regenderable) {
            if let Some(&kept) = set.g_index.get(&p.tags) {
                set.warnings.push(LoadWarning::Duplicate {
                    dropped: p.clone(),
                    kept: set.g_patterns[kept].clone(),
                });
                continue;
            }
            if !p.tags.iter().any(|t| p.category.target_tags().contains(t)) {
                set.warnings.push(LoadWarning::NoTargetTag(p.clone()));
            }
            set.g_index.insert(p.tags.clone(), set.g_patterns.len());
            set.g_patterns.push(p.clone());
        }

        for p in set.declared.iter().filter(|p| p.polarity == GenderClass::Neutral) {
            if let Some(&g) = set.g_index.get(&p.tags) {
                set.warnings.push(LoadWarning::PolarityConflict {
                    dropped: p.clone(),
                    kept: set.g_patterns[g].clone(),
                });
                continue;
            }
            if set.n_index.contains(&p.tags) {
                let kept = set
                    .n_patterns
                    .iter()
                    .find(|k| k.tags == p.tags)
                    .expect("indexed pattern is stored")
                    .clone();
                set.warnings.push(LoadWarning::Duplicate {
                    dropped: p.clone(),
                    kept,
                });
                continue;
            }
            set.n_index.insert(p.tags.clone());
            set.n_patterns.push(p.clone());
        }

        set
    }

    /// Every row as declared, before deduplication.
    pub fn declared(&self) -> &[Pattern] {
        &self.declared
    }

    pub fn g_patterns(&self) -> &[Pattern] {
        &self.g_patterns
    }

    pub fn n_patterns(&self) -> &[Pattern] {
        &self.n_patterns
    }

    pub fn warnings(&self) -> &[LoadWarning] {
        &self.warnings
    }

    pub fn is_empty(&self) -> bool {
        self.g_patterns.is_empty() && self.n_patterns.is_empty()
    }

    /// Number of declared rows with the given polarity and category.
    pub fn declared_count(&self, polarity: GenderClass, category: Category) -> usize {
        self.declared
            .iter()
            .filter(|p| p.polarity == polarity && p.category == category)
            .count()
    }

    /// Classifies a sentence.
    ///
    /// Order of checks: re-genderable templates, neutral templates, clitics
    /// attached to verbs anywhere in the sentence, neutral demonstratives.
    pub fn classify(&self, sentence: &TaggedSentence) -> MatchResult {
        let tags = sentence.tag_sequence();
        if tags.is_empty() {
            return MatchResult::Unmatched;
        }

        if let Some(&idx) = self.g_index.get(&tags) {
            let category = self.g_patterns[idx].category;
            let positions = target_positions(sentence, category);
            if !positions.is_empty() {
                return MatchResult::Regenderable {
                    category,
                    positions,
                };
            }
        }

        if self.n_index.contains(&tags) {
            return MatchResult::Neutral;
        }

        let positions = target_positions(sentence, Category::CliticOnVerb);
        if !positions.is_empty() {
            return MatchResult::Regenderable {
                category: Category::CliticOnVerb,
                positions,
            };
        }

        let neutral_demonstrative = sentence.tokens().iter().any(|t| {
            *t.tag() == PosTag::DM
                && NEUTRAL_DEMONSTRATIVES.contains(&t.surface().to_lowercase().as_str())
        });
        if neutral_demonstrative {
            return MatchResult::Neutral;
        }

        MatchResult::Unmatched
    }
}

/// Free-function form of [`PatternSet::load`].
pub fn load_patterns(definition: &str) -> Result<PatternSet> {
    PatternSet::load(definition)
}

/// Free-function form of [`PatternSet::classify`].
pub fn classify_sentence(sentence: &TaggedSentence, patterns: &PatternSet) -> MatchResult {
    patterns.classify(sentence)
}

fn parse_line(line: usize, raw: &str, content: &str) -> Result<Pattern> {
    let syntax = |message: &str| Error::PatternSyntax {
        line,
        content: raw.to_owned(),
        message: message.to_owned(),
    };

    let fields: Vec<&str> = content.split_whitespace().collect();
    let [polarity, category, sequence] = fields[..] else {
        return Err(syntax("expected `<G|N> <CATEGORY> <TAG-TAG-...>`"));
    };
    let polarity: GenderClass = polarity
        .parse()
        .map_err(|_| syntax("polarity must be G or N"))?;
    let category = Category::from_file_name(category).ok_or_else(|| Error::UnknownCategory {
        line,
        name: category.to_owned(),
    })?;
    if sequence.split('-').any(str::is_empty) {
        return Err(syntax("empty tag in sequence"));
    }
    let tags = sequence.split('-').map(PosTag::parse).collect();

    Ok(Pattern {
        tags,
        polarity,
        category,
        line,
    })
}

fn has_infinitive_clitic(surface: &str) -> bool {
    let lower = surface.to_lowercase();
    INFINITIVE_CLITIC_SUFFIXES
        .iter()
        .any(|s| lower.len() > s.len() && lower.ends_with(s))
}

fn target_positions(sentence: &TaggedSentence, category: Category) -> Vec<usize> {
    sentence
        .tokens()
        .iter()
        .enumerate()
        .filter(|(_, t)| match (category, t.tag()) {
            (Category::CliticOnVerb, PosTag::VCL) => true,
            (Category::CliticOnVerb, PosTag::Vinf) => has_infinitive_clitic(t.surface()),
            (c, tag) => c.target_tags().contains(tag),
        })
        .map(|(i, _)| i)
        .collect()
}

/// Outcome of classifying one sentence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatchResult {
    /// The sentence can be re-gendered by rewriting the tokens at `positions`
    /// (strictly increasing, never empty).
    Regenderable {
        category: Category,
        positions: Vec<usize>,
    },
    Neutral,
    Unmatched,
}

impl MatchResult {
    pub fn label(&self) -> Option<GenderClass> {
        match self {
            MatchResult::Regenderable { .. } => Some(GenderClass::Regenderable),
            MatchResult::Neutral => Some(GenderClass::Neutral),
            MatchResult::Unmatched => None,
        }
    }

    pub fn category(&self) -> Option<Category> {
        match self {
            MatchResult::Regenderable { category, .. } => Some(*category),
            _ => None,
        }
    }

    pub fn positions(&self) -> &[usize] {
        match self {
            MatchResult::Regenderable { positions, .. } => positions,
            _ => &[],
        }
    }
}

impl fmt::Display for MatchResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatchResult::Regenderable { category, .. } => write!(f, "G\t{category}"),
            MatchResult::Neutral => f.write_str("N\t-"),
            MatchResult::Unmatched => f.write_str("unmatched\t-"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sentence(pairs: &[(&str, &str)]) -> TaggedSentence {
        TaggedSentence::from_pairs(pairs.iter().copied()).unwrap()
    }

    /// A sentence with the given tag sequence and throwaway surfaces.
    fn synthetic(tags: &[PosTag]) -> TaggedSentence {
        let pairs: Vec<(String, &str)> = tags
            .iter()
            .enumerate()
            .map(|(i, t)| (format!("w{i}"), t.canonical_name()))
            .collect();
        TaggedSentence::from_pairs(pairs.iter().map(|(s, t)| (s.as_str(), *t))).unwrap()
    }

    #[test]
    fn loads_single_line() {
        let set = PatternSet::load("G CLITIC PPC-Vfin-FS").unwrap();
        assert_eq!(set.g_patterns().len(), 1);
        let p = &set.g_patterns()[0];
        assert_eq!(p.category(), Category::CliticPronoun);
        assert_eq!(p.tags(), &[PosTag::PPC, PosTag::Vfin, PosTag::FS]);
        assert!(set.n_patterns().is_empty());
    }

    #[test]
    fn empty_definition_is_empty_set() {
        assert!(PatternSet::load("").unwrap().is_empty());
        assert!(PatternSet::load("# only a comment\n\n").unwrap().is_empty());
    }

    #[test]
    fn malformed_lines_report_line_numbers() {
        let err = PatternSet::load("G CLITIC PPC-Vfin-FS\nG CLITIC\n").unwrap_err();
        assert!(matches!(err, Error::PatternSyntax { line: 2, .. }), "{err}");

        let err = PatternSet::load("X CLITIC PPC\n").unwrap_err();
        assert!(matches!(err, Error::PatternSyntax { line: 1, .. }));

        let err = PatternSet::load("G CLITIC PPC--FS\n").unwrap_err();
        assert!(matches!(err, Error::PatternSyntax { line: 1, .. }));

        let err = PatternSet::load("\nG NOUN NC-FS\n").unwrap_err();
        assert!(matches!(err, Error::UnknownCategory { line: 2, ref name } if name == "NOUN"));
    }

    #[test]
    fn builtin_row_counts_match_tables() {
        let set = PatternSet::builtin();
        let g = GenderClass::Regenderable;
        let n = GenderClass::Neutral;
        assert_eq!(set.declared_count(g, Category::CliticPronoun), 12);
        assert_eq!(set.declared_count(g, Category::Demonstrative), 12);
        assert_eq!(set.declared_count(g, Category::PastParticiple), 13);
        assert_eq!(set.declared_count(g, Category::Adjective), 13);
        assert_eq!(set.declared_count(n, Category::PastParticiple), 11);
        assert_eq!(set.declared_count(n, Category::Adjective), 10);
        assert_eq!(set.declared().len(), 71);
        // One cross-category duplicate among G rows, one G/N conflict and one
        // repeated N row.
        assert_eq!(set.g_patterns().len(), 49);
        assert_eq!(set.n_patterns().len(), 19);
    }

    #[test]
    fn builtin_warnings_name_the_known_table_anomalies() {
        let set = PatternSet::builtin();
        let w = set.warnings();
        assert_eq!(w.len(), 3, "{w:?}");
        assert!(w.iter().any(|w| matches!(w,
            LoadWarning::Duplicate { dropped, kept }
                if dropped.sequence() == "ADV-Vfin-DM-FS"
                    && dropped.category() == Category::PastParticiple
                    && kept.category() == Category::Demonstrative)));
        assert!(w.iter().any(|w| matches!(w,
            LoadWarning::PolarityConflict { dropped, .. } if dropped.sequence() == "Vadj-CC-Vadj-FS")));
        assert!(w.iter().any(|w| matches!(w,
            LoadWarning::Duplicate { dropped, .. }
                if dropped.sequence() == "FS-NC-Vadj-FS" && dropped.polarity() == GenderClass::Neutral)));
    }

    #[test]
    fn g_pattern_without_target_tag_is_flagged_but_never_rewrites() {
        let set = PatternSet::load("G PARTICIPLE ADV-Vfin-DM-FS\n").unwrap();
        assert!(matches!(set.warnings(), [LoadWarning::NoTargetTag(_)]));
        let s = synthetic(&[PosTag::ADV, PosTag::Vfin, PosTag::DM, PosTag::FS]);
        assert_eq!(set.classify(&s), MatchResult::Unmatched);
    }

    #[test]
    fn neutral_row_conflicting_with_g_is_dropped_regardless_of_order() {
        let set = PatternSet::load("N PARTICIPLE Vadj-CC-Vadj-FS\nG PARTICIPLE Vadj-CC-Vadj-FS\n")
            .unwrap();
        assert_eq!(set.g_patterns().len(), 1);
        assert!(set.n_patterns().is_empty());
        let s = synthetic(&[PosTag::Vadj, PosTag::CC, PosTag::Vadj, PosTag::FS]);
        assert_eq!(
            set.classify(&s),
            MatchResult::Regenderable {
                category: Category::PastParticiple,
                positions: vec![0, 2]
            }
        );
    }

    #[test]
    fn first_declared_g_pattern_wins_a_tie() {
        let set = PatternSet::load("G ADJECTIVE ADJ-FS\nG PARTICIPLE ADJ-FS\n").unwrap();
        let s = synthetic(&[PosTag::ADJ, PosTag::FS]);
        assert_eq!(set.classify(&s).category(), Some(Category::Adjective));
        assert_eq!(set.warnings().len(), 1);
    }

    #[test]
    fn classifies_worked_examples() {
        let set = PatternSet::builtin();

        let s = sentence(&[("Lo", "PPC"), ("veo", "Vfin"), (".", "FS")]);
        assert_eq!(
            classify_sentence(&s, &set),
            MatchResult::Regenderable {
                category: Category::CliticPronoun,
                positions: vec![0]
            }
        );

        let s = sentence(&[
            ("La", "ART"),
            ("solución", "NC"),
            ("es", "Vfin"),
            ("correcta", "ADJ"),
            (".", "FS"),
        ]);
        assert_eq!(classify_sentence(&s, &set), MatchResult::Neutral);

        let s = sentence(&[("listo", "ADJ"), ("y", "CC"), ("seguro", "ADJ"), (".", "FS")]);
        assert_eq!(
            classify_sentence(&s, &set),
            MatchResult::Regenderable {
                category: Category::Adjective,
                positions: vec![0, 2]
            }
        );

        assert_eq!(
            classify_sentence(&TaggedSentence::default(), &set),
            MatchResult::Unmatched
        );

        let s = sentence(&[("Quiero", "Vfin"), ("verlo", "Vinf"), (".", "FS")]);
        assert_eq!(
            classify_sentence(&s, &set),
            MatchResult::Regenderable {
                category: Category::CliticOnVerb,
                positions: vec![1]
            }
        );
    }

    #[test]
    fn plain_infinitive_is_not_a_clitic_candidate() {
        let set = PatternSet::builtin();
        let s = sentence(&[("Quiero", "Vfin"), ("ver", "Vinf"), (".", "FS")]);
        assert_eq!(set.classify(&s), MatchResult::Unmatched);
        // A bare "la" tagged Vinf is not an infinitive with a clitic.
        assert!(!has_infinitive_clitic("la"));
    }

    #[test]
    fn vcl_anywhere_is_a_candidate() {
        let set = PatternSet::builtin();
        let s = sentence(&[
            ("Gracias", "NC"),
            ("por", "PREP"),
            ("acabarlo", "VCL"),
            (".", "FS"),
        ]);
        assert_eq!(
            set.classify(&s),
            MatchResult::Regenderable {
                category: Category::CliticOnVerb,
                positions: vec![2]
            }
        );
    }

    #[test]
    fn neutral_demonstrative_makes_sentence_neutral() {
        let set = PatternSet::builtin();
        let s = sentence(&[("Eso", "DM"), ("es", "Vfin"), ("bueno", "ADJ"), (".", "FS")]);
        assert_eq!(set.classify(&s), MatchResult::Neutral);
        let s = sentence(&[("Ese", "DM"), ("es", "Vfin"), ("bueno", "ADJ"), (".", "FS")]);
        assert_eq!(set.classify(&s), MatchResult::Unmatched);
    }

    #[test]
    fn matching_is_whole_sequence() {
        let set = PatternSet::builtin();
        // PPC-Vfin-FS embedded in a longer sequence.
        let s = synthetic(&[PosTag::NC, PosTag::PPC, PosTag::Vfin, PosTag::FS]);
        assert_eq!(set.classify(&s), MatchResult::Unmatched);
        // Prefix of a template.
        let s = synthetic(&[PosTag::PPC, PosTag::Vfin]);
        assert_eq!(set.classify(&s), MatchResult::Unmatched);
    }

    #[test]
    fn every_builtin_pattern_classifies_with_its_polarity() {
        let set = PatternSet::builtin();
        for p in set.g_patterns() {
            let result = set.classify(&synthetic(p.tags()));
            if p.tags().iter().any(|t| p.category().target_tags().contains(t)) {
                assert_eq!(result.category(), Some(p.category()), "{p}");
                let positions = result.positions();
                assert!(!positions.is_empty());
                assert!(positions.windows(2).all(|w| w[0] < w[1]));
            }
        }
        for p in set.n_patterns() {
            assert_eq!(set.classify(&synthetic(p.tags())), MatchResult::Neutral, "{p}");
        }
    }
}
