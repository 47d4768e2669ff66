//! Worked examples, checked through the public API only.

use regender::classifier::{extract_features, fit_feature_space, ClassifierModel, Hyperparams};
use regender::corpus::{filter_segment, generate_parallel, read_tagged_corpus, DropReason, FilterDecision, ReadMode};
use regender::eval::{classifier_report, corpus_error_report, word_error_count};
use regender::morph::is_gendered_word;
use regender::tagset::{parse_tag, tag_sequence};
use regender::{
    classify_sentence, load_patterns, rewrite_sentence, rewrite_word, Category, ExceptionLexicon,
    GenderClass, MatchResult, ParallelRecord, PatternSet, PosTag, TaggedSentence,
};

const G: GenderClass = GenderClass::Regenderable;
const N: GenderClass = GenderClass::Neutral;

fn s(pairs: &[(&str, &str)]) -> TaggedSentence {
    TaggedSentence::from_pairs(pairs.iter().copied()).unwrap()
}

#[test]
fn tags_and_sequences() {
    assert_eq!(parse_tag("PPC"), PosTag::PPC);
    assert_eq!(parse_tag("Vadj"), PosTag::Vadj);
    assert_eq!(parse_tag("XYZ"), PosTag::Other("XYZ".into()));
    assert_eq!(
        tag_sequence(&s(&[("Lo", "PPC"), ("veo", "Vfin"), (".", "FS")])),
        [PosTag::PPC, PosTag::Vfin, PosTag::FS]
    );
    assert!(tag_sequence(&TaggedSentence::default()).is_empty());
    assert_eq!(
        tag_sequence(&s(&[("esto", "DM"), ("es", "Vfin"), ("perfecto", "ADJ"), (".", "FS")])),
        [PosTag::DM, PosTag::Vfin, PosTag::ADJ, PosTag::FS]
    );
    for tag in PosTag::known() {
        assert_eq!(parse_tag(tag.canonical_name()), tag);
    }
    assert_eq!("G".parse::<GenderClass>().unwrap(), G);
    assert_eq!(N.to_string(), "N");
}

#[test]
fn classification() {
    let ps = PatternSet::builtin();
    let regenderable = |category, positions: &[usize]| MatchResult::Regenderable {
        category,
        positions: positions.to_vec(),
    };
    assert_eq!(
        classify_sentence(&s(&[("Lo", "PPC"), ("veo", "Vfin"), (".", "FS")]), &ps),
        regenderable(Category::CliticPronoun, &[0])
    );
    assert_eq!(
        classify_sentence(
            &s(&[("La", "ART"), ("solución", "NC"), ("es", "Vfin"), ("correcta", "ADJ"), (".", "FS")]),
            &ps
        ),
        MatchResult::Neutral
    );
    assert_eq!(
        classify_sentence(&s(&[("alto", "ADJ"), ("y", "CC"), ("guapo", "ADJ"), (".", "FS")]), &ps),
        regenderable(Category::Adjective, &[0, 2])
    );
    assert_eq!(classify_sentence(&TaggedSentence::default(), &ps), MatchResult::Unmatched);
    assert_eq!(
        classify_sentence(&s(&[("Quiero", "Vfin"), ("verlo", "Vinf"), (".", "FS")]), &ps),
        regenderable(Category::CliticOnVerb, &[1])
    );

    let one = load_patterns("G CLITIC PPC-Vfin-FS").unwrap();
    assert_eq!(one.g_patterns().len(), 1);
    assert!(load_patterns("").unwrap().is_empty());
}

#[test]
fn word_rewrites() {
    let cases = [
        ("completo", Category::Adjective, Some("completa")),
        ("confundida", Category::PastParticiple, Some("confundido")),
        ("lo", Category::CliticPronoun, Some("la")),
        ("aquellas", Category::Demonstrative, Some("aquellos")),
        ("acabarlo", Category::CliticOnVerb, Some("acabarla")),
        ("Mándamelo", Category::CliticOnVerb, Some("Mándamela")),
        ("interesante", Category::Adjective, None),
        ("dicha", Category::PastParticiple, Some("dicho")),
        ("trabajador", Category::Adjective, Some("trabajadora")),
        ("le", Category::CliticPronoun, None),
    ];
    for (word, category, expected) in cases {
        assert_eq!(rewrite_word(word, category).as_deref(), expected, "{word}");
    }
    let lex = ExceptionLexicon::default();
    assert!(is_gendered_word("cansado", &lex));
    assert!(!is_gendered_word("genial", &lex));
    assert!(!is_gendered_word("y", &lex));
}

#[test]
fn sentence_rewrites() {
    let ps = PatternSet::builtin();
    let lex = ExceptionLexicon::default();
    let run = |sentence: TaggedSentence| {
        let m = ps.classify(&sentence);
        rewrite_sentence(&sentence, &m, &lex).unwrap()
    };
    assert_eq!(
        run(s(&[("está", "Vfin"), ("adjunto", "Vadj"), (".", "FS")])).variant.text(),
        "está adjunta ."
    );
    assert!(run(s(&[("esto", "DM"), ("es", "Vfin"), ("perfecto", "ADJ"), (".", "FS")])).identity());
    assert_eq!(
        run(s(&[("aburrido", "Vadj"), ("y", "CC"), ("cansado", "Vadj"), (".", "FS")]))
            .variant
            .text(),
        "aburrida y cansada ."
    );
    assert!(run(s(&[("lo", "PPC"), ("siento", "Vfin"), (".", "FS")])).identity());
}

#[test]
fn corpus_pipeline() {
    let eleven = "uno dos tres cuatro cinco seis siete ocho nueve diez once";
    assert_eq!(filter_segment(eleven, 10), FilterDecision::Drop(DropReason::TooLong));
    assert_eq!(filter_segment("¿Está completo?", 10), FilterDecision::Keep);
    assert_eq!(filter_segment("1234 %%% !!!", 10), FilterDecision::Drop(DropReason::NonAlpha));

    let corpus: Vec<_> = read_tagged_corpus(
        "está\tVfin\nadjunto\tVadj\n.\tFS\n\nesto\tDM\nes\tVfin\nperfecto\tADJ\n.\tFS\n".as_bytes(),
        ReadMode::Strict,
    )
    .map(Result::unwrap)
    .collect();
    let records: Vec<_> =
        generate_parallel(corpus, &PatternSet::builtin(), &ExceptionLexicon::default()).collect();
    let rows: Vec<_> = records.iter().map(|r| r.to_tsv(false)).collect();
    assert_eq!(
        rows,
        [
            "está adjunto .\testá adjunta .\tG",
            "está adjunta .\testá adjunto .\tG",
            "esto es perfecto .\testo es perfecto .\tN",
        ]
    );
    assert_eq!(records[2], ParallelRecord::neutral("esto es perfecto ."));
}

#[test]
fn features_and_training() {
    let lex = ExceptionLexicon::default();
    let space = fit_feature_space(&["hola"]).unwrap();
    assert_eq!(space.char_terms(), ["hola"]);
    let space = fit_feature_space(&["estoy cansado", "eso es"]).unwrap();
    let flag = space.morph_column();
    assert_eq!(extract_features("estoy cansado", &space, &lex).get(flag), 1.0);
    assert_eq!(extract_features("eso es", &space, &lex).get(flag), 0.0);
    assert_eq!(extract_features("", &space, &lex).nnz(), 0);

    let data: Vec<(String, GenderClass)> = (0..20)
        .map(|i| {
            if i % 2 == 0 {
                (format!("estoy cansado {i}"), G)
            } else {
                (format!("estoy aquí {i}"), N)
            }
        })
        .collect();
    let texts: Vec<&str> = data.iter().map(|(t, _)| t.as_str()).collect();
    let model = regender::classifier::train(
        &data,
        fit_feature_space(&texts).unwrap(),
        Hyperparams::default(),
        &lex,
    )
    .unwrap();
    for (text, label) in &data {
        assert_eq!(model.predict(text, &lex).0, *label);
    }
    let mut buf = Vec::new();
    model.save(&mut buf).unwrap();
    assert_eq!(ClassifierModel::load(buf.as_slice()).unwrap(), model);
}

#[test]
fn metrics() {
    assert_eq!(word_error_count("está adjunta .", "está adjunta ."), 0);
    assert_eq!(word_error_count("está adjunto .", "está adjunta ."), 1);
    assert_eq!(word_error_count("uno dos", "uno dos tres"), 1);

    let report = corpus_error_report([("a b c d e", "a b c d e", N), ("a b c d e", "a b c d x", G)]).unwrap();
    assert_eq!((report.per_sentence_pct(), report.per_word_pct()), (50.0, 10.0));

    let r = classifier_report(&[G, G, G, G], &[G, G, N, N]).unwrap();
    assert_eq!((r.class(G).recall, r.class(G).precision), (1.0, 0.5));
}
