use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BatchSize, Criterion, Throughput};

use regender::classifier::{self, FeatureSpace, Hyperparams};
use regender::corpus::{generate_parallel, split_corpus, ParallelRecord, SplitSpec};
use regender::synth::SyntheticCorpus;
use regender::{ExceptionLexicon, PatternSet, Rewriter, TaggedSentence};

fn sentences(n: usize) -> Vec<TaggedSentence> {
    SyntheticCorpus::new(&PatternSet::builtin(), 1).take(n).collect()
}

fn records(n: usize) -> Vec<ParallelRecord> {
    let ps = PatternSet::builtin();
    generate_parallel(sentences(n), &ps, &ExceptionLexicon::default()).collect()
}

fn rules(c: &mut Criterion) {
    let ps = PatternSet::builtin();
    let rw = Rewriter::default();
    let corpus = sentences(10_000);
    let mut group = c.benchmark_group("rules");
    group.throughput(Throughput::Elements(corpus.len() as u64));
    group.bench_function("classify", |b| {
        b.iter(|| corpus.iter().map(|s| ps.classify(black_box(s))).count())
    });
    let matches: Vec<_> = corpus.iter().map(|s| ps.classify(s)).collect();
    group.bench_function("rewrite", |b| {
        b.iter(|| {
            corpus
                .iter()
                .zip(&matches)
                .filter_map(|(s, m)| rw.rewrite_sentence(black_box(s), m).ok())
                .count()
        })
    });
    group.bench_function("generate_parallel", |b| {
        b.iter_batched(
            || corpus.clone(),
            |corpus| generate_parallel(corpus, &ps, rw.lexicon()).count(),
            BatchSize::LargeInput,
        )
    });
    group.finish();
}

fn corpus(c: &mut Criterion) {
    let data = records(50_000);
    c.bench_function("split_corpus", |b| {
        b.iter_batched(
            || data.clone(),
            |data| split_corpus(data, SplitSpec { dev_count: 1000, test_count: 3000, seed: 7 }),
            BatchSize::LargeInput,
        )
    });
}

fn classifier(c: &mut Criterion) {
    let data = records(5_000);
    let texts: Vec<&str> = data.iter().map(ParallelRecord::source).collect();
    let labelled: Vec<(&str, _)> = data.iter().map(|r| (r.source(), r.label())).collect();
    let rw = Rewriter::default();
    let space = FeatureSpace::fit(&texts).unwrap();

    let mut group = c.benchmark_group("classifier");
    group.sample_size(10);
    group.bench_function("fit_space", |b| b.iter(|| FeatureSpace::fit(black_box(&texts)).unwrap()));
    group.throughput(Throughput::Elements(texts.len() as u64));
    group.bench_function("extract", |b| {
        b.iter(|| texts.iter().map(|t| space.extract(black_box(t), &rw).nnz()).sum::<usize>())
    });
    group.bench_function("train", |b| {
        b.iter_batched(
            || space.clone(),
            |space| classifier::train(&labelled, space, Hyperparams::default(), rw.lexicon()).unwrap(),
            BatchSize::LargeInput,
        )
    });
    let model = classifier::train(&labelled, space.clone(), Hyperparams::default(), rw.lexicon()).unwrap();
    group.bench_function("predict", |b| {
        b.iter(|| texts.iter().filter(|t| model.predict_with(black_box(t), &rw).1 > 0.0).count())
    });
    group.finish();
}

criterion_group!(benches, rules, corpus, classifier);
criterion_main!(benches);
