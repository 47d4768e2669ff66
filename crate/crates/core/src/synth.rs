//! Seeded synthetic data: tagged sentences built from tag sequences and a
//! word list on which every rewrite rule is its own inverse.
//!
//! Used by tests and benchmarks, and handy for smoke-testing a pattern file
//! without a tagged corpus at hand.

use std::io::{self, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::morph::{RuleKind, RuleTable};
use crate::patterns::PatternSet;
use crate::tagset::{Category, GenderClass, PosTag, TaggedSentence, Token};

/// Surface forms offered for each tag.
pub fn vocabulary(tag: &PosTag) -> &'static [&'static str] {
    match tag {
        PosTag::PPC => &["lo", "la", "los", "las", "Lo", "La", "le", "les"],
        PosTag::DM => &[
            "este", "esta", "ese", "esa", "aquel", "aquella", "estos", "esas", "aquellos", "esto",
            "eso", "aquello", "Este", "Esa",
        ],
        PosTag::Vadj => &[
            "cansado", "terminada", "hecho", "dormidos", "aburrida", "preocupado", "confundido",
            "adjunto", "casadas", "ocupado", "enfadada", "dicho", "sorprendido", "invitadas",
            "abierto", "escrito", "perdida", "enamorado", "agotados", "emocionada",
        ],
        PosTag::ADJ => &[
            "bueno", "perfecto", "completa", "contento", "trabajador", "alta", "nuevos", "feliz",
            "amable", "normal", "listo", "seguro", "lindas", "fantástico", "correcta", "rico",
            "interesante", "genial", "importante", "tranquila", "guapo", "raros",
        ],
        PosTag::VCL => &[
            "acabarlo", "mándamelo", "déjala", "hacerlos", "verla", "dímelo", "tráela",
            "llamarlas", "cómpralo", "buscarla",
        ],
        PosTag::Vfin => &[
            "está", "es", "parece", "sigue", "estoy", "veo", "tengo", "quedé", "estás", "son",
            "quiero", "digo", "siento", "sé", "necesito", "conozco",
        ],
        PosTag::VHfin => &["he", "ha", "hemos", "han", "has"],
        PosTag::VMfin => &["puedo", "quiere", "debe", "podemos", "debes"],
        PosTag::Vinf => &["estar", "ser", "ver", "comer", "salir", "parecer", "volver"],
        PosTag::ADV => &[
            "muy", "ya", "bien", "aquí", "siempre", "tan", "también", "todavía", "bastante", "ahora",
        ],
        PosTag::NEG => &["no", "nunca", "tampoco"],
        PosTag::NC => &[
            "casa", "libro", "trabajo", "día", "gente", "tiempo", "idea", "coche", "información",
            "presupuestos", "puerta", "mesa", "chico", "amigas", "documento",
        ],
        PosTag::ART => &["el", "un", "una", "unos", "la", "los"],
        PosTag::CC => &["y", "pero", "o"],
        PosTag::CQUE => &["que"],
        PosTag::SE => &["se"],
        PosTag::INT => &["qué", "cómo", "quién", "vaya"],
        PosTag::PPX => &["mío", "tuyo", "suyo", "nuestro"],
        PosTag::CM => &[","],
        PosTag::FS => &[".", "?", "!", "¿", "¡"],
        PosTag::Other(_) => &["xyz", "etc"],
    }
}

/// A sentence with the given tag sequence and words drawn from
/// [`vocabulary`].
pub fn sentence_from_tags<R: Rng>(tags: &[PosTag], rng: &mut R) -> TaggedSentence {
    let tokens = tags
        .iter()
        .map(|tag| {
            let words = vocabulary(tag);
            let word = words[rng.random_range(0..words.len())];
            Token::new(word, tag.clone()).expect("vocabulary words are non-empty")
        })
        .collect();
    TaggedSentence::new(tokens)
}

/// Renders a sentence in the vertical `token<TAB>tag` format, including the
/// blank separator line.
pub fn write_vertical<W: Write>(out: &mut W, sentence: &TaggedSentence) -> io::Result<()> {
    for token in sentence.tokens() {
        writeln!(out, "{}\t{}", token.surface(), token.tag())?;
    }
    writeln!(out)
}

/// Tags used for filler sentences; excludes the rewrite targets.
const FILLER_TAGS: [PosTag; 12] = [
    PosTag::Vfin,
    PosTag::VMfin,
    PosTag::ADV,
    PosTag::NEG,
    PosTag::NC,
    PosTag::ART,
    PosTag::CC,
    PosTag::CQUE,
    PosTag::SE,
    PosTag::PPX,
    PosTag::CM,
    PosTag::Vinf,
];

/// Endless, seed-deterministic stream of tagged sentences.
///
/// Sentences follow a re-genderable template, a neutral template or a random
/// filler sequence in roughly 45/35/20 proportions.
pub struct SyntheticCorpus {
    g: Vec<Vec<PosTag>>,
    n: Vec<Vec<PosTag>>,
    rng: ChaCha8Rng,
}

impl SyntheticCorpus {
    pub fn new(patterns: &PatternSet, seed: u64) -> Self {
        SyntheticCorpus {
            g: patterns.g_patterns().iter().map(|p| p.tags().to_vec()).collect(),
            n: patterns.n_patterns().iter().map(|p| p.tags().to_vec()).collect(),
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// A sentence following a random template of the given polarity.
    pub fn from_polarity(&mut self, polarity: GenderClass) -> Option<TaggedSentence> {
        let pool = match polarity {
            GenderClass::Regenderable => &self.g,
            GenderClass::Neutral => &self.n,
        };
        if pool.is_empty() {
            return None;
        }
        let tags = &pool[self.rng.random_range(0..pool.len())];
        Some(sentence_from_tags(tags, &mut self.rng))
    }

    fn filler(&mut self) -> TaggedSentence {
        let len = self.rng.random_range(2..10);
        let mut tags: Vec<PosTag> = (0..len)
            .map(|_| FILLER_TAGS[self.rng.random_range(0..FILLER_TAGS.len())].clone())
            .collect();
        tags.push(PosTag::FS);
        sentence_from_tags(&tags, &mut self.rng)
    }
}

impl Iterator for SyntheticCorpus {
    type Item = TaggedSentence;

    fn next(&mut self) -> Option<TaggedSentence> {
        let roll = self.rng.random_range(0..100);
        let polarity = match roll {
            0..45 => Some(GenderClass::Regenderable),
            45..80 => Some(GenderClass::Neutral),
            _ => None,
        };
        match polarity.and_then(|p| self.from_polarity(p)) {
            Some(sentence) => Some(sentence),
            None => Some(self.filler()),
        }
    }
}

const ONSETS: [&str; 12] = ["b", "c", "f", "g", "l", "m", "n", "p", "r", "s", "t", "v"];
const VOWELS: [&str; 5] = ["a", "e", "i", "o", "u"];
const CODAS: [&str; 4] = ["", "l", "n", "r"];

/// Pronounceable made-up stems such as "bal" or "tirun", in a fixed order.
fn stems() -> impl Iterator<Item = String> {
    ONSETS.iter().flat_map(|o1| {
        VOWELS.iter().flat_map(move |v1| {
            ONSETS.iter().flat_map(move |o2| {
                VOWELS.iter().flat_map(move |v2| {
                    CODAS
                        .iter()
                        .map(move |c| format!("{o1}{v1}{o2}{v2}{c}"))
                })
            })
        })
    })
}

/// At least `min_words` gendered words, each paired with the category whose
/// rules it is built for, plus every whole-word swap form.
///
/// Words are made from invented stems so that no suffix other than the one
/// used to build them applies, which makes each rewrite exactly invertible.
pub fn involution_lexicon(min_words: usize) -> Vec<(String, Category)> {
    let table = RuleTable::builtin();
    let mut out: Vec<(String, Category)> = table
        .rules()
        .iter()
        .filter_map(|rule| match &rule.kind {
            RuleKind::WholeWordSwap { from, .. } => Some((from.clone(), rule.category)),
            RuleKind::Suffix { .. } => None,
        })
        .collect();

    let suffix_rules: Vec<(Category, &str)> = table
        .rules()
        .iter()
        .filter_map(|rule| match &rule.kind {
            RuleKind::Suffix { suffix, .. } => Some((rule.category, suffix.as_str())),
            RuleKind::WholeWordSwap { .. } => None,
        })
        .collect();

    let stems: Vec<String> = stems()
        // "-dor" stems would make "-a" forms look like "-dora".
        .filter(|s| !s.ends_with("do") && !s.ends_with("dor") && !s.ends_with("ch"))
        .collect();

    let per_rule = min_words.div_ceil(suffix_rules.len()).max(1);
    for (i, &(category, suffix)) in suffix_rules.iter().enumerate() {
        for j in 0..per_rule {
            let stem = &stems[(i * 7919 + j * 104_729) % stems.len()];
            out.push((format!("{stem}{suffix}"), category));
        }
    }
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morph::Rewriter;

    #[test]
    fn corpus_is_seed_deterministic() {
        let patterns = PatternSet::builtin();
        let a: Vec<_> = SyntheticCorpus::new(&patterns, 3).take(200).collect();
        let b: Vec<_> = SyntheticCorpus::new(&patterns, 3).take(200).collect();
        let c: Vec<_> = SyntheticCorpus::new(&patterns, 4).take(200).collect();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn template_sentences_carry_the_template() {
        let patterns = PatternSet::builtin();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for p in patterns.declared() {
            let s = sentence_from_tags(p.tags(), &mut rng);
            assert_eq!(s.tag_sequence(), p.tags());
        }
    }

    #[test]
    fn vertical_output_round_trips() {
        let patterns = PatternSet::builtin();
        let corpus: Vec<_> = SyntheticCorpus::new(&patterns, 1).take(50).collect();
        let mut buf = Vec::new();
        for s in &corpus {
            write_vertical(&mut buf, s).unwrap();
        }
        let back: Vec<_> = crate::corpus::read_tagged_corpus(buf.as_slice(), Default::default())
            .map(Result::unwrap)
            .collect();
        assert_eq!(back, corpus);
    }

    #[test]
    fn involution_lexicon_words_are_invertible() {
        let words = involution_lexicon(1000);
        assert!(words.len() >= 1000);
        let rewriter = Rewriter::new(crate::morph::ExceptionLexicon::empty());
        for (word, category) in &words {
            let once = rewriter.rewrite_word(word, *category).unwrap();
            assert_ne!(&once, word);
            assert_eq!(&rewriter.rewrite_word(&once, *category).unwrap(), word);
        }
    }
}
