//! Tokens, POS tags and the small closed enumerations shared by every stage.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A part-of-speech tag.
///
/// Only the tags that occur in the built-in sequence templates get a
/// dedicated variant. Any other tagger output is kept verbatim in
/// [`PosTag::Other`] and never participates in template matching unless a
/// user-supplied template names it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PosTag {
    /// Clitic pronoun as a separate token (lo, la, le, ...).
    PPC,
    /// Demonstrative pronoun.
    DM,
    /// Adjectival past participle.
    Vadj,
    ADJ,
    /// Verb with attached clitic.
    VCL,
    Vfin,
    /// Finite form of "haber".
    VHfin,
    /// Finite modal verb.
    VMfin,
    Vinf,
    ADV,
    NEG,
    NC,
    ART,
    CC,
    CQUE,
    SE,
    INT,
    PPX,
    /// Comma.
    CM,
    /// Sentence punctuation.
    FS,
    Other(String),
}

const KNOWN: [(&str, PosTag); 20] = [
    ("PPC", PosTag::PPC),
    ("DM", PosTag::DM),
    ("Vadj", PosTag::Vadj),
    ("ADJ", PosTag::ADJ),
    ("VCL", PosTag::VCL),
    ("Vfin", PosTag::Vfin),
    ("VHfin", PosTag::VHfin),
    ("VMfin", PosTag::VMfin),
    ("Vinf", PosTag::Vinf),
    ("ADV", PosTag::ADV),
    ("NEG", PosTag::NEG),
    ("NC", PosTag::NC),
    ("ART", PosTag::ART),
    ("CC", PosTag::CC),
    ("CQUE", PosTag::CQUE),
    ("SE", PosTag::SE),
    ("INT", PosTag::INT),
    ("PPX", PosTag::PPX),
    ("CM", PosTag::CM),
    ("FS", PosTag::FS),
];

impl PosTag {
    /// All tags with a dedicated variant, in declaration order.
    pub fn known() -> impl Iterator<Item = PosTag> {
        KNOWN.iter().map(|(_, tag)| tag.clone())
    }

    /// Parses a tag string. Total: unknown strings become [`PosTag::Other`].
    pub fn parse(raw: &str) -> PosTag {
        KNOWN
            .iter()
            .find(|(name, _)| *name == raw)
            .map(|(_, tag)| tag.clone())
            .unwrap_or_else(|| PosTag::Other(raw.to_owned()))
    }

    pub fn canonical_name(&self) -> &str {
        match self {
            PosTag::Other(label) => label,
            known => {
                KNOWN
                    .iter()
                    .find(|(_, tag)| tag == known)
                    .expect("every non-Other tag is listed")
                    .0
            }
        }
    }
}

/// Free-function form of [`PosTag::parse`].
pub fn parse_tag(raw: &str) -> PosTag {
    PosTag::parse(raw)
}

impl fmt::Display for PosTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.canonical_name())
    }
}

impl FromStr for PosTag {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(PosTag::parse(s))
    }
}

/// A surface form paired with its tag.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Token {
    surface: String,
    tag: PosTag,
}

impl Token {
    /// Creates a token, rejecting empty surfaces and surfaces containing
    /// whitespace.
    pub fn new(surface: impl Into<String>, tag: PosTag) -> Result<Self, Error> {
        let surface = surface.into();
        if surface.is_empty() || surface.chars().any(char::is_whitespace) {
            return Err(Error::InvalidToken(surface));
        }
        Ok(Token { surface, tag })
    }

    pub fn surface(&self) -> &str {
        &self.surface
    }

    pub fn tag(&self) -> &PosTag {
        &self.tag
    }

    /// Returns a copy of this token with a different surface and the same tag.
    pub fn with_surface(&self, surface: impl Into<String>) -> Result<Self, Error> {
        Token::new(surface, self.tag.clone())
    }
}

/// An ordered sequence of tagged tokens.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TaggedSentence {
    tokens: Vec<Token>,
}

impl TaggedSentence {
    pub fn new(tokens: Vec<Token>) -> Self {
        TaggedSentence { tokens }
    }

    /// Builds a sentence from `(surface, tag)` string pairs.
    pub fn from_pairs<'a, I>(pairs: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        pairs
            .into_iter()
            .map(|(surface, tag)| Token::new(surface, PosTag::parse(tag)))
            .collect::<Result<Vec<_>, _>>()
            .map(TaggedSentence::new)
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// The tags of the sentence in token order.
    pub fn tag_sequence(&self) -> Vec<PosTag> {
        self.tokens.iter().map(|t| t.tag.clone()).collect()
    }

    /// Surface forms joined by single spaces.
    pub fn text(&self) -> String {
        let mut out = String::new();
        for (i, token) in self.tokens.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(&token.surface);
        }
        out
    }

    pub(crate) fn tokens_mut(&mut self) -> &mut [Token] {
        &mut self.tokens
    }
}

/// Free-function form of [`TaggedSentence::tag_sequence`].
pub fn tag_sequence(sentence: &TaggedSentence) -> Vec<PosTag> {
    sentence.tag_sequence()
}

/// Sentence label: re-genderable or neutral.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GenderClass {
    #[serde(rename = "G")]
    Regenderable,
    #[serde(rename = "N")]
    Neutral,
}

impl GenderClass {
    pub fn as_str(self) -> &'static str {
        match self {
            GenderClass::Regenderable => "G",
            GenderClass::Neutral => "N",
        }
    }
}

impl fmt::Display for GenderClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GenderClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "G" => Ok(GenderClass::Regenderable),
            "N" => Ok(GenderClass::Neutral),
            other => Err(Error::InvalidLabel(other.to_owned())),
        }
    }
}

/// Word class a rewrite rule or re-genderable template belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Category {
    CliticPronoun,
    Demonstrative,
    PastParticiple,
    Adjective,
    CliticOnVerb,
}

impl Category {
    pub const ALL: [Category; 5] = [
        Category::CliticPronoun,
        Category::Demonstrative,
        Category::PastParticiple,
        Category::Adjective,
        Category::CliticOnVerb,
    ];

    /// Tags whose tokens are rewritten when a sentence matches in this
    /// category. Infinitives count for clitics on verbs because taggers often
    /// label "verlo" as a bare infinitive.
    pub fn target_tags(self) -> &'static [PosTag] {
        match self {
            Category::CliticPronoun => &[PosTag::PPC],
            Category::Demonstrative => &[PosTag::DM],
            Category::PastParticiple => &[PosTag::Vadj],
            Category::Adjective => &[PosTag::ADJ],
            Category::CliticOnVerb => &[PosTag::VCL, PosTag::Vinf],
        }
    }

    /// Name used in pattern files and reports.
    pub fn file_name(self) -> &'static str {
        match self {
            Category::CliticPronoun => "CLITIC",
            Category::Demonstrative => "DEM",
            Category::PastParticiple => "PARTICIPLE",
            Category::Adjective => "ADJECTIVE",
            Category::CliticOnVerb => "VCL",
        }
    }

    pub fn from_file_name(name: &str) -> Option<Category> {
        Category::ALL.into_iter().find(|c| c.file_name() == name)
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.file_name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_known_and_unknown_tags() {
        assert_eq!(parse_tag("PPC"), PosTag::PPC);
        assert_eq!(parse_tag("Vadj"), PosTag::Vadj);
        assert_eq!(parse_tag("XYZ"), PosTag::Other("XYZ".into()));
    }

    #[test]
    fn tag_parsing_is_case_sensitive() {
        assert_eq!(parse_tag("ppc"), PosTag::Other("ppc".into()));
        assert_eq!(parse_tag("VADJ"), PosTag::Other("VADJ".into()));
    }

    #[test]
    fn canonical_names_round_trip() {
        for tag in PosTag::known() {
            assert_eq!(parse_tag(tag.canonical_name()), tag);
        }
        assert_eq!(PosTag::known().count(), 20);
    }

    #[test]
    fn tag_sequence_follows_token_order() {
        let s = TaggedSentence::from_pairs([("Lo", "PPC"), ("veo", "Vfin"), (".", "FS")]).unwrap();
        assert_eq!(tag_sequence(&s), vec![PosTag::PPC, PosTag::Vfin, PosTag::FS]);

        let s = TaggedSentence::from_pairs([
            ("esto", "DM"),
            ("es", "Vfin"),
            ("perfecto", "ADJ"),
            (".", "FS"),
        ])
        .unwrap();
        assert_eq!(
            tag_sequence(&s),
            vec![PosTag::DM, PosTag::Vfin, PosTag::ADJ, PosTag::FS]
        );

        assert!(tag_sequence(&TaggedSentence::default()).is_empty());
    }

    #[test]
    fn token_rejects_empty_and_whitespace() {
        assert!(Token::new("", PosTag::NC).is_err());
        assert!(Token::new("a b", PosTag::NC).is_err());
        let t = Token::new("Está", PosTag::Vfin).unwrap();
        assert_eq!(t.surface(), "Está");
    }

    #[test]
    fn gender_class_serializes_as_single_letter() {
        assert_eq!(GenderClass::Regenderable.to_string(), "G");
        assert_eq!("N".parse::<GenderClass>().unwrap(), GenderClass::Neutral);
        assert!("g".parse::<GenderClass>().is_err());
    }
}
