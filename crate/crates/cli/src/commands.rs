use std::cell::RefCell;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use log::info;
use rayon::prelude::*;

use regender::classifier::{self, ClassifierModel, FeatureSpace, Hyperparams};
use regender::corpus::{
    filter_segment, read_parallel_tsv, records_for, split_corpus, FilterStats, PairingStats,
    ParallelRecord, ReadMode, SplitSpec, TaggedReader,
};
use regender::eval::{classifier_report, corpus_error_report};
use regender::{Error, ExceptionLexicon, GenderClass, MatchResult, PatternSet, Rewriter, TaggedSentence};

use crate::args::{Cli, Command, Hyper, InOut, ReportFormat, Rules, TaggedInput};
use crate::io::{create, open_input, open_output, read_to_string};

/// Sentences handed to the worker pool at a time. Output order is the input
/// order; memory stays proportional to one batch.
const BATCH: usize = 8192;

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Filter { io, max_words } => filter(&io, max_words as usize),
        Command::Classify { io, tagged, rules } => classify(&io, &tagged, &rules),
        Command::Rewrite {
            io,
            tagged,
            rules,
            with_source,
        } => rewrite(&io, &tagged, &rules, with_source),
        Command::GenParallel {
            io,
            tagged,
            rules,
            prefix_label,
        } => gen_parallel(&io, &tagged, &rules, prefix_label),
        Command::Split {
            input,
            output_prefix,
            dev,
            test,
            seed,
            prefix_label,
            review,
        } => split(
            input.as_ref(),
            &output_prefix,
            SplitSpec {
                dev_count: dev,
                test_count: test,
                seed,
            },
            prefix_label,
            review,
        ),
        Command::TrainClf {
            input,
            model,
            prefix_label,
            hyper,
            lexicon,
        } => train_clf(input.as_ref(), &model, prefix_label, &hyper, lexicon.as_deref()),
        Command::PredictClf { io, model, lexicon } => predict_clf(&io, &model, lexicon.as_deref()),
        Command::EvalRewrite { io, format } => eval_rewrite(&io, format),
        Command::EvalClf {
            io,
            model,
            prefix_label,
            lexicon,
            format,
        } => eval_clf(&io, &model, prefix_label, lexicon.as_deref(), format),
    }
}

fn load_lexicon(path: Option<&Path>) -> Result<ExceptionLexicon> {
    match path {
        None => Ok(ExceptionLexicon::default()),
        Some(p) => ExceptionLexicon::parse(&read_to_string(p)?)
            .with_context(|| format!("in lexicon {}", p.display())),
    }
}

fn load_rules(rules: &Rules) -> Result<(PatternSet, Rewriter)> {
    let patterns = match &rules.patterns {
        None => PatternSet::builtin(),
        Some(p) => PatternSet::load(&read_to_string(p)?)
            .with_context(|| format!("in pattern file {}", p.display()))?,
    };
    if patterns.is_empty() {
        bail!("the pattern set is empty");
    }
    Ok((patterns, Rewriter::new(load_lexicon(rules.lexicon.as_deref())?)))
}

fn load_model(path: &Path) -> Result<ClassifierModel> {
    let file = std::fs::File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    ClassifierModel::load(std::io::BufReader::new(file))
        .with_context(|| format!("cannot load model {}", path.display()))
}

/// An output path must not name the same file as the input.
fn check_distinct(input: Option<&PathBuf>, output: &Path) -> Result<()> {
    if let Some(input) = input {
        if input == output && input != Path::new("-") {
            bail!("input and output are the same file: {}", input.display());
        }
    }
    Ok(())
}

fn check_parent_exists(path: &Path) -> Result<()> {
    match path.parent() {
        Some(dir) if !dir.as_os_str().is_empty() && !dir.is_dir() => {
            bail!("directory {} does not exist", dir.display())
        }
        _ => Ok(()),
    }
}

fn filter(io: &InOut, max_words: usize) -> Result<()> {
    if let Some(out) = &io.output {
        check_distinct(io.input.as_ref(), out)?;
    }
    let input = open_input(io.input.as_ref())?;
    let mut out = open_output(io.output.as_ref())?;
    let mut stats = FilterStats::default();
    for line in input.lines() {
        let line = line.context("reading input")?;
        let decision = filter_segment(&line, max_words);
        stats.record(decision);
        if decision == regender::corpus::FilterDecision::Keep {
            writeln!(out, "{line}")?;
        }
    }
    out.flush()?;
    eprintln!(
        "kept={} dropped={} too_long={} non_alpha={}",
        stats.kept,
        stats.dropped(),
        stats.too_long,
        stats.non_alpha
    );
    Ok(())
}

/// Feeds the tagged corpus to `each` in batches; returns the number of
/// sentences skipped as malformed.
fn tagged_batches(
    input: Box<dyn BufRead>,
    tagged: &TaggedInput,
    mut each: impl FnMut(Vec<TaggedSentence>) -> Result<()>,
) -> Result<usize> {
    let mode = if tagged.strict {
        ReadMode::Strict
    } else {
        ReadMode::Lenient
    };
    let mut reader = TaggedReader::new(input, mode).split_on_fs(tagged.split_on_fs);
    loop {
        let batch = reader
            .by_ref()
            .take(BATCH)
            .collect::<regender::Result<Vec<_>>>()?;
        if batch.is_empty() {
            break;
        }
        each(batch)?;
    }
    if reader.skipped() > 0 {
        log::warn!("{} malformed sentences skipped", reader.skipped());
    }
    Ok(reader.skipped())
}

#[derive(Default)]
struct LabelCounts {
    g: u64,
    n: u64,
    unmatched: u64,
}

impl LabelCounts {
    fn add(&mut self, result: &MatchResult) {
        match result.label() {
            Some(GenderClass::Regenderable) => self.g += 1,
            Some(GenderClass::Neutral) => self.n += 1,
            None => self.unmatched += 1,
        }
    }

    fn summary(&self, skipped: usize) -> String {
        format!(
            "sentences={} G={} N={} unmatched={} skipped={skipped}",
            self.g + self.n + self.unmatched,
            self.g,
            self.n,
            self.unmatched
        )
    }
}

fn classify(io: &InOut, tagged: &TaggedInput, rules: &Rules) -> Result<()> {
    let (patterns, _) = load_rules(rules)?;
    let input = open_input(io.input.as_ref())?;
    let mut out = open_output(io.output.as_ref())?;
    let mut counts = LabelCounts::default();
    let skipped = tagged_batches(input, tagged, |batch| {
        let results: Vec<MatchResult> = batch.par_iter().map(|s| patterns.classify(s)).collect();
        for (sentence, result) in batch.iter().zip(&results) {
            counts.add(result);
            writeln!(out, "{result}\t{}", sentence.text())?;
        }
        Ok(())
    })?;
    out.flush()?;
    eprintln!("{}", counts.summary(skipped));
    Ok(())
}

fn rewrite(io: &InOut, tagged: &TaggedInput, rules: &Rules, with_source: bool) -> Result<()> {
    let (patterns, rewriter) = load_rules(rules)?;
    let input = open_input(io.input.as_ref())?;
    let mut out = open_output(io.output.as_ref())?;
    let mut counts = LabelCounts::default();
    let mut changed = 0u64;
    let skipped = tagged_batches(input, tagged, |batch| {
        let rewritten: Vec<(MatchResult, TaggedSentence, bool)> = batch
            .par_iter()
            .map(|s| {
                let result = patterns.classify(s);
                let outcome = rewriter
                    .rewrite_sentence(s, &result)
                    .expect("result computed from this sentence");
                let identity = outcome.identity();
                (result, outcome.variant, identity)
            })
            .collect();
        for (source, (result, variant, identity)) in batch.iter().zip(&rewritten) {
            counts.add(result);
            changed += u64::from(!identity);
            if with_source {
                let label = result.label().map_or("unmatched", GenderClass::as_str);
                writeln!(out, "{}\t{}\t{label}", source.text(), variant.text())?;
            } else {
                writeln!(out, "{}", variant.text())?;
            }
        }
        Ok(())
    })?;
    out.flush()?;
    eprintln!("{} changed={changed}", counts.summary(skipped));
    Ok(())
}

fn gen_parallel(io: &InOut, tagged: &TaggedInput, rules: &Rules, prefix_label: bool) -> Result<()> {
    let (patterns, rewriter) = load_rules(rules)?;
    let input = open_input(io.input.as_ref())?;
    let mut out = open_output(io.output.as_ref())?;
    let mut stats = PairingStats::default();
    let mut written = 0u64;
    let skipped = tagged_batches(input, tagged, |batch| {
        let produced: Vec<(MatchResult, Vec<ParallelRecord>)> = batch
            .par_iter()
            .map(|s| {
                let result = patterns.classify(s);
                let records = records_for(&rewriter, s, &result);
                (result, records)
            })
            .collect();
        for (result, records) in &produced {
            match (result, records.len()) {
                (MatchResult::Unmatched, _) => stats.unmatched += 1,
                (MatchResult::Neutral, _) => stats.neutral += 1,
                (MatchResult::Regenderable { .. }, 2) => stats.regenderable += 1,
                (MatchResult::Regenderable { .. }, _) => stats.blocked += 1,
            }
            for record in records {
                writeln!(out, "{}", record.to_tsv(prefix_label))?;
                written += 1;
            }
        }
        Ok(())
    })?;
    out.flush()?;
    eprintln!(
        "records={written} regenderable={} neutral={} blocked={} unmatched={} skipped={skipped}",
        stats.regenderable, stats.neutral, stats.blocked, stats.unmatched
    );
    Ok(())
}

fn read_records(input: Option<&PathBuf>, prefix_label: bool) -> Result<Vec<ParallelRecord>> {
    let reader = open_input(input)?;
    read_parallel_tsv(reader, prefix_label)
        .collect::<regender::Result<Vec<_>>>()
        .context("reading parallel TSV")
}

fn split(
    input: Option<&PathBuf>,
    prefix: &Path,
    spec: SplitSpec,
    prefix_label: bool,
    review: bool,
) -> Result<()> {
    if prefix.as_os_str().is_empty() || prefix == Path::new("-") {
        bail!("--output-prefix must name a file prefix");
    }
    check_parent_exists(prefix)?;
    let path_for = |part: &str| -> PathBuf {
        let mut name = prefix.as_os_str().to_owned();
        name.push(format!(".{part}.tsv"));
        PathBuf::from(name)
    };
    for part in ["train", "dev", "test"] {
        check_distinct(input, &path_for(part))?;
    }

    let records = read_records(input, prefix_label)?;
    let total = records.len();
    let split = split_corpus(records, spec)?;
    for (part, records) in [("train", &split.train), ("dev", &split.dev), ("test", &split.test)] {
        let mut out = create(&path_for(part))?;
        for r in records {
            writeln!(out, "{}", r.to_tsv(prefix_label))?;
        }
        out.flush()?;
    }
    if review {
        let mut out = create(&path_for("review"))?;
        for (part, records) in [("dev", &split.dev), ("test", &split.test)] {
            for r in records.iter().filter(|r| r.label() == GenderClass::Regenderable) {
                writeln!(out, "{part}\t{}\t{}", r.source(), r.target())?;
            }
        }
        out.flush()?;
    }
    eprintln!(
        "records={total} train={} dev={} test={}",
        split.train.len(),
        split.dev.len(),
        split.test.len()
    );
    Ok(())
}

fn hyperparams(hyper: &Hyper) -> Result<Hyperparams> {
    let hp = Hyperparams {
        lambda: hyper.lambda,
        epochs: hyper.epochs,
        eta0: hyper.eta0,
        seed: hyper.seed,
    };
    hp.validate()?;
    Ok(hp)
}

fn train_clf(
    input: Option<&PathBuf>,
    model_path: &Path,
    prefix_label: bool,
    hyper: &Hyper,
    lexicon: Option<&Path>,
) -> Result<()> {
    let hp = hyperparams(hyper)?;
    check_parent_exists(model_path)?;
    check_distinct(input, model_path)?;
    let lexicon = load_lexicon(lexicon)?;

    let records = read_records(input, prefix_label)?;
    let data: Vec<(&str, GenderClass)> = records.iter().map(|r| (r.source(), r.label())).collect();
    let texts: Vec<&str> = data.iter().map(|(t, _)| *t).collect();
    let space = FeatureSpace::fit(&texts)?;
    info!("feature space: {} columns", space.dimension());
    let (model, report) = classifier::train_with_report(&data, space, hp, &lexicon)?;

    let mut out = create(model_path)?;
    model.save(&mut out)?;
    out.flush()?;
    eprintln!(
        "records={} dimension={} objective={:.6}",
        data.len(),
        model.space().dimension(),
        report.objective.last().copied().unwrap_or(f64::NAN)
    );
    Ok(())
}

fn predict_clf(io: &InOut, model_path: &Path, lexicon: Option<&Path>) -> Result<()> {
    let model = load_model(model_path)?;
    let rewriter = Rewriter::new(load_lexicon(lexicon)?);
    let input = open_input(io.input.as_ref())?;
    let mut out = open_output(io.output.as_ref())?;
    let mut lines = input.lines();
    loop {
        let batch = lines
            .by_ref()
            .take(BATCH)
            .collect::<std::io::Result<Vec<String>>>()?;
        if batch.is_empty() {
            break;
        }
        let predictions: Vec<(GenderClass, f64)> = batch
            .par_iter()
            .map(|line| model.predict_with(line, &rewriter))
            .collect();
        for (line, (label, score)) in batch.iter().zip(predictions) {
            writeln!(out, "{label}\t{score:.6}\t{line}")?;
        }
    }
    out.flush()?;
    Ok(())
}

fn parse_eval_line(line: &str, line_no: usize) -> regender::Result<(String, String, GenderClass)> {
    let malformed = |message: &str| Error::MalformedRecord {
        line: line_no,
        content: line.to_owned(),
        message: message.to_owned(),
    };
    let fields: Vec<&str> = line.split('\t').collect();
    let [hyp, reference, label] = fields[..] else {
        return Err(malformed("expected hypothesis<TAB>reference<TAB>label"));
    };
    let label = label
        .trim()
        .parse()
        .map_err(|_| malformed("label must be G or N"))?;
    Ok((hyp.to_owned(), reference.to_owned(), label))
}

fn eval_rewrite(io: &InOut, format: ReportFormat) -> Result<()> {
    let input = open_input(io.input.as_ref())?;
    let failure: RefCell<Option<anyhow::Error>> = RefCell::new(None);
    let triples = input
        .lines()
        .enumerate()
        .map_while(|(idx, line)| {
            let parsed = line
                .map_err(anyhow::Error::from)
                .and_then(|l| {
                    if l.trim().is_empty() {
                        Ok(None)
                    } else {
                        parse_eval_line(&l, idx + 1).map(Some).map_err(Into::into)
                    }
                });
            match parsed {
                Ok(item) => Some(item),
                Err(e) => {
                    *failure.borrow_mut() = Some(e);
                    None
                }
            }
        })
        .flatten();
    let report = corpus_error_report(triples);
    if let Some(err) = failure.into_inner() {
        return Err(err);
    }
    let report = report?;
    let mut out = open_output(io.output.as_ref())?;
    match format {
        ReportFormat::Table => write!(out, "{report}")?,
        ReportFormat::Kv => write!(out, "{}", report.to_key_values())?,
    }
    out.flush()?;
    Ok(())
}

fn eval_clf(
    io: &InOut,
    model_path: &Path,
    prefix_label: bool,
    lexicon: Option<&Path>,
    format: ReportFormat,
) -> Result<()> {
    let model = load_model(model_path)?;
    let rewriter = Rewriter::new(load_lexicon(lexicon)?);
    let records = read_records(io.input.as_ref(), prefix_label)?;
    let predictions: Vec<GenderClass> = records
        .par_iter()
        .map(|r| model.predict_with(r.source(), &rewriter).0)
        .collect();
    let gold: Vec<GenderClass> = records.iter().map(ParallelRecord::label).collect();
    let report = classifier_report(&predictions, &gold)?;
    let mut out = open_output(io.output.as_ref())?;
    match format {
        ReportFormat::Table => write!(out, "{report}")?,
        ReportFormat::Kv => write!(out, "{}", report.to_key_values())?,
    }
    out.flush()?;
    Ok(())
}
