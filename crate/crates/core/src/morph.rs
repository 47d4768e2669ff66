//! Opposite-gender word forms and sentence rewriting.
//!
//! Each [`Category`] owns a table of whole-word swaps and suffix rules.
//! Swaps are tried first, then suffix rules from the longest suffix down, so
//! that "trabajadora" is handled by `dora -> dor` and not by `a -> o`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::patterns::{MatchResult, NEUTRAL_DEMONSTRATIVES};
use crate::tagset::{Category, TaggedSentence};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RuleKind {
    WholeWordSwap { from: String, to: String },
    /// Replace the trailing `suffix` with `replacement`.
    Suffix { suffix: String, replacement: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RewriteRule {
    pub category: Category,
    pub kind: RuleKind,
}

impl RewriteRule {
    fn swap(category: Category, from: &str, to: &str) -> Self {
        RewriteRule {
            category,
            kind: RuleKind::WholeWordSwap {
                from: from.to_owned(),
                to: to.to_owned(),
            },
        }
    }

    fn suffix(category: Category, suffix: &str, replacement: &str) -> Self {
        RewriteRule {
            category,
            kind: RuleKind::Suffix {
                suffix: suffix.to_owned(),
                replacement: replacement.to_owned(),
            },
        }
    }

    /// The rule that undoes this one.
    pub fn inverse(&self) -> RewriteRule {
        let kind = match &self.kind {
            RuleKind::WholeWordSwap { from, to } => RuleKind::WholeWordSwap {
                from: to.clone(),
                to: from.clone(),
            },
            RuleKind::Suffix {
                suffix,
                replacement,
            } => RuleKind::Suffix {
                suffix: replacement.clone(),
                replacement: suffix.clone(),
            },
        };
        RewriteRule {
            category: self.category,
            kind,
        }
    }
}

impl fmt::Display for RewriteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            RuleKind::WholeWordSwap { from, to } => {
                write!(f, "{}: {from} => {to}", self.category)
            }
            RuleKind::Suffix {
                suffix,
                replacement,
            } => write!(f, "{}: -{suffix} => -{replacement}", self.category),
        }
    }
}

/// Pairs listed once; each produces a rule and its inverse.
const CLITIC_SWAPS: [(&str, &str); 2] = [("lo", "la"), ("los", "las")];

const DEMONSTRATIVE_SWAPS: [(&str, &str); 6] = [
    ("este", "esta"),
    ("estos", "estas"),
    ("ese", "esa"),
    ("esos", "esas"),
    ("aquel", "aquella"),
    ("aquellos", "aquellas"),
];

/// The last two pairs cover irregular participles (abierto, escrito, adjunto).
const PARTICIPLE_SUFFIXES: [(&str, &str); 8] = [
    ("ado", "ada"),
    ("ido", "ida"),
    ("cho", "cha"),
    ("ados", "adas"),
    ("idos", "idas"),
    ("chos", "chas"),
    ("to", "ta"),
    ("tos", "tas"),
];

const ADJECTIVE_SUFFIXES: [(&str, &str); 4] =
    [("o", "a"), ("os", "as"), ("dor", "dora"), ("dores", "doras")];

const VERB_CLITIC_SUFFIXES: [(&str, &str); 2] = [("lo", "la"), ("los", "las")];

struct CategoryRules {
    swaps: HashMap<String, String>,
    /// Sorted by suffix length in characters, longest first.
    suffixes: Vec<(Vec<char>, String)>,
}

/// The complete rule inventory for all categories.
pub struct RuleTable {
    rules: Vec<RewriteRule>,
    by_category: HashMap<Category, CategoryRules>,
}

impl RuleTable {
    pub fn builtin() -> &'static RuleTable {
        static TABLE: OnceLock<RuleTable> = OnceLock::new();
        TABLE.get_or_init(|| RuleTable::new(builtin_rules()))
    }

    fn new(rules: Vec<RewriteRule>) -> Self {
        let mut by_category: HashMap<Category, CategoryRules> = Category::ALL
            .into_iter()
            .map(|c| {
                (
                    c,
                    CategoryRules {
                        swaps: HashMap::new(),
                        suffixes: Vec::new(),
                    },
                )
            })
            .collect();
        for rule in &rules {
            let entry = by_category.get_mut(&rule.category).expect("all categories present");
            match &rule.kind {
                RuleKind::WholeWordSwap { from, to } => {
                    entry.swaps.insert(from.clone(), to.clone());
                }
                RuleKind::Suffix {
                    suffix,
                    replacement,
                } => entry
                    .suffixes
                    .push((suffix.chars().collect(), replacement.clone())),
            }
        }
        for entry in by_category.values_mut() {
            entry.suffixes.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then(a.0.cmp(&b.0)));
        }
        RuleTable { rules, by_category }
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn rules_for(&self, category: Category) -> impl Iterator<Item = &RewriteRule> {
        self.rules.iter().filter(move |r| r.category == category)
    }
}

fn builtin_rules() -> Vec<RewriteRule> {
    let mut rules = Vec::new();
    let mut both = |rule: RewriteRule| {
        rules.push(rule.inverse());
        rules.push(rule);
    };
    for (a, b) in CLITIC_SWAPS {
        both(RewriteRule::swap(Category::CliticPronoun, a, b));
    }
    for (a, b) in DEMONSTRATIVE_SWAPS {
        both(RewriteRule::swap(Category::Demonstrative, a, b));
    }
    for (a, b) in PARTICIPLE_SUFFIXES {
        both(RewriteRule::suffix(Category::PastParticiple, a, b));
    }
    for (a, b) in ADJECTIVE_SUFFIXES {
        both(RewriteRule::suffix(Category::Adjective, a, b));
    }
    for (a, b) in VERB_CLITIC_SUFFIXES {
        both(RewriteRule::suffix(Category::CliticOnVerb, a, b));
    }
    rules
}

/// Words and expressions that must never be re-gendered.
///
/// All lookups are case-insensitive; entries are stored lowercased.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionLexicon {
    /// Clitic + following word, e.g. "lo siento".
    pub fixed_expressions: BTreeSet<String>,
    pub neutral_adjective_suffixes: BTreeSet<String>,
    pub neutral_clitics: BTreeSet<String>,
    /// Words left alone in every category, e.g. the neutral demonstratives.
    pub neutral_words: BTreeSet<String>,
}

const SECTIONS: [&str; 4] = [
    "fixed_expressions",
    "neutral_adjective_suffixes",
    "neutral_clitics",
    "neutral_words",
];

impl Default for ExceptionLexicon {
    fn default() -> Self {
        let set = |items: &[&str]| items.iter().map(|s| s.to_string()).collect();
        ExceptionLexicon {
            fixed_expressions: set(&["lo siento", "lo sé"]),
            neutral_adjective_suffixes: set(&["al", "nte", "ble"]),
            neutral_clitics: set(&["le", "les"]),
            neutral_words: set(&NEUTRAL_DEMONSTRATIVES),
        }
    }
}

impl ExceptionLexicon {
    /// A lexicon with no entries at all.
    pub fn empty() -> Self {
        ExceptionLexicon {
            fixed_expressions: BTreeSet::new(),
            neutral_adjective_suffixes: BTreeSet::new(),
            neutral_clitics: BTreeSet::new(),
            neutral_words: BTreeSet::new(),
        }
    }

    /// Parses a lexicon file. Sections not present in the file are empty.
    ///
    /// ```text
    /// [fixed_expressions]
    /// lo siento
    /// [neutral_clitics]
    /// le
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let mut lex = ExceptionLexicon::empty();
        let mut section: Option<&str> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let err = |message: &str| Error::LexiconSyntax {
                line,
                content: raw.to_owned(),
                message: message.to_owned(),
            };
            if let Some(name) = content.strip_prefix('[').and_then(|c| c.strip_suffix(']')) {
                let name = name.trim();
                section = Some(
                    SECTIONS
                        .iter()
                        .copied()
                        .find(|s| *s == name)
                        .ok_or_else(|| err("unknown section"))?,
                );
                continue;
            }
            let entry = content.split_whitespace().collect::<Vec<_>>().join(" ").to_lowercase();
            let target = match section {
                Some("fixed_expressions") => {
                    if entry.split(' ').count() != 2 {
                        return Err(err("fixed expression must be two words"));
                    }
                    &mut lex.fixed_expressions
                }
                Some("neutral_adjective_suffixes") => &mut lex.neutral_adjective_suffixes,
                Some("neutral_clitics") => &mut lex.neutral_clitics,
                Some("neutral_words") => &mut lex.neutral_words,
                _ => return Err(err("entry outside of a section")),
            };
            if section != Some("fixed_expressions") && entry.contains(' ') {
                return Err(err("entry must be a single word"));
            }
            target.insert(entry);
        }
        Ok(lex)
    }

    /// Serializes into the format accepted by [`ExceptionLexicon::parse`].
    pub fn to_file_string(&self) -> String {
        let mut out = String::new();
        for (name, entries) in SECTIONS.iter().zip([
            &self.fixed_expressions,
            &self.neutral_adjective_suffixes,
            &self.neutral_clitics,
            &self.neutral_words,
        ]) {
            out.push_str(&format!("[{name}]\n"));
            for e in entries {
                out.push_str(e);
                out.push('\n');
            }
        }
        out
    }

    pub fn is_fixed_expression(&self, first: &str, second: &str) -> bool {
        let bigram = format!("{} {}", first.to_lowercase(), second.to_lowercase());
        self.fixed_expressions.contains(&bigram)
    }

    fn has_neutral_adjective_suffix(&self, lower: &str) -> bool {
        self.neutral_adjective_suffixes
            .iter()
            .any(|s| lower.chars().count() > s.chars().count() && lower.ends_with(s.as_str()))
    }
}

/// Result of rewriting one sentence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteOutcome {
    pub variant: TaggedSentence,
    pub changed_positions: Vec<usize>,
}

impl RewriteOutcome {
    /// True when no token changed.
    pub fn identity(&self) -> bool {
        self.changed_positions.is_empty()
    }
}

/// Rule table plus the exceptions that block it.
#[derive(Clone)]
pub struct Rewriter {
    rules: &'static RuleTable,
    lexicon: ExceptionLexicon,
}

impl Default for Rewriter {
    fn default() -> Self {
        Rewriter::new(ExceptionLexicon::default())
    }
}

impl Rewriter {
    pub fn new(lexicon: ExceptionLexicon) -> Self {
        Rewriter {
            rules: RuleTable::builtin(),
            lexicon,
        }
    }

    pub fn lexicon(&self) -> &ExceptionLexicon {
        &self.lexicon
    }

    /// The opposite-gender form of `word` in `category`, or `None` when no
    /// rule applies or an exception blocks it.
    pub fn rewrite_word(&self, word: &str, category: Category) -> Option<String> {
        if word.is_empty() {
            return None;
        }
        let lower = word.to_lowercase();
        if self.lexicon.neutral_words.contains(&lower) {
            return None;
        }
        if category == Category::CliticPronoun && self.lexicon.neutral_clitics.contains(&lower) {
            return None;
        }

        let rules = &self.rules.by_category[&category];
        if let Some(to) = rules.swaps.get(&lower) {
            return Some(match_case(word, to));
        }
        if category == Category::Adjective && self.lexicon.has_neutral_adjective_suffix(&lower) {
            return None;
        }

        let chars: Vec<char> = word.chars().collect();
        for (suffix, replacement) in &rules.suffixes {
            if chars.len() <= suffix.len() {
                continue;
            }
            let tail = &chars[chars.len() - suffix.len()..];
            let matches = tail
                .iter()
                .zip(suffix)
                .all(|(c, s)| c.to_lowercase().eq(std::iter::once(*s)));
            if matches {
                let stem: String = chars[..chars.len() - suffix.len()].iter().collect();
                let tail: String = tail.iter().collect();
                return Some(stem + &match_case(&tail, replacement));
            }
        }
        None
    }

    /// True iff some category has a rule that rewrites `word`.
    pub fn is_gendered_word(&self, word: &str) -> bool {
        Category::ALL
            .into_iter()
            .any(|c| self.rewrite_word(word, c).is_some())
    }

    /// Rewrites the matched positions of `sentence`.
    ///
    /// Fails only if `result` names a position outside the sentence, which
    /// means it was computed for a different sentence.
    pub fn rewrite_sentence(
        &self,
        sentence: &TaggedSentence,
        result: &MatchResult,
    ) -> Result<RewriteOutcome> {
        let mut variant = sentence.clone();
        let mut changed_positions = Vec::new();
        let MatchResult::Regenderable {
            category,
            positions,
        } = result
        else {
            return Ok(RewriteOutcome {
                variant,
                changed_positions,
            });
        };

        let len = sentence.len();
        if let Some(&position) = positions.iter().find(|&&p| p >= len) {
            return Err(Error::PositionOutOfRange { position, len });
        }

        let tokens = sentence.tokens();
        for &pos in positions {
            let token = &tokens[pos];
            if let Some(next) = tokens.get(pos + 1) {
                if self.lexicon.is_fixed_expression(token.surface(), next.surface()) {
                    continue;
                }
            }
            if let Some(rewritten) = self.rewrite_word(token.surface(), *category) {
                if rewritten != token.surface() {
                    variant.tokens_mut()[pos] = token.with_surface(rewritten)?;
                    changed_positions.push(pos);
                }
            }
        }
        Ok(RewriteOutcome {
            variant,
            changed_positions,
        })
    }
}

fn default_rewriter() -> &'static Rewriter {
    static DEFAULT: OnceLock<Rewriter> = OnceLock::new();
    DEFAULT.get_or_init(Rewriter::default)
}

/// [`Rewriter::rewrite_word`] with the default exception lexicon.
pub fn rewrite_word(word: &str, category: Category) -> Option<String> {
    default_rewriter().rewrite_word(word, category)
}

pub fn rewrite_sentence(
    sentence: &TaggedSentence,
    result: &MatchResult,
    lexicon: &ExceptionLexicon,
) -> Result<RewriteOutcome> {
    if lexicon == default_rewriter().lexicon() {
        default_rewriter().rewrite_sentence(sentence, result)
    } else {
        Rewriter::new(lexicon.clone()).rewrite_sentence(sentence, result)
    }
}

pub fn is_gendered_word(word: &str, lexicon: &ExceptionLexicon) -> bool {
    if lexicon == default_rewriter().lexicon() {
        default_rewriter().is_gendered_word(word)
    } else {
        Rewriter::new(lexicon.clone()).is_gendered_word(word)
    }
}

/// Copies the capitalisation pattern of `original` onto `replacement`:
/// all caps, initial capital, or lowercase.
fn match_case(original: &str, replacement: &str) -> String {
    let letters: Vec<char> = original.chars().filter(|c| c.is_alphabetic()).collect();
    let all_upper = !letters.is_empty() && letters.iter().all(|c| c.is_uppercase());
    if all_upper {
        return replacement.to_uppercase();
    }
    match original.chars().next() {
        Some(first) if first.is_uppercase() => {
            let mut chars = replacement.chars();
            match chars.next() {
                Some(c) => c.to_uppercase().chain(chars).collect(),
                None => String::new(),
            }
        }
        _ => replacement.to_owned(),
    }
}
