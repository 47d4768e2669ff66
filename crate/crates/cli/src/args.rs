use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Generate binary gender variants of Spanish sentences, build
/// gender-parallel corpora and train a neutral/re-genderable classifier.
///
/// Every INPUT argument defaults to standard input and every --output to
/// standard output; `-` names them explicitly.
#[derive(Debug, Parser)]
#[command(name = "regender", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Keep raw lines of at most --max-words words that contain a letter.
    Filter {
        #[command(flatten)]
        io: InOut,
        #[arg(long, default_value_t = regender::corpus::DEFAULT_MAX_WORDS as u64,
              value_parser = clap::value_parser!(u64).range(1..))]
        max_words: u64,
    },
    /// Label each tagged sentence G, N or unmatched.
    Classify {
        #[command(flatten)]
        io: InOut,
        #[command(flatten)]
        tagged: TaggedInput,
        #[command(flatten)]
        rules: Rules,
    },
    /// Print the opposite-gender variant of each tagged sentence.
    Rewrite {
        #[command(flatten)]
        io: InOut,
        #[command(flatten)]
        tagged: TaggedInput,
        #[command(flatten)]
        rules: Rules,
        /// Print `source<TAB>variant<TAB>label` instead of the variant alone.
        #[arg(long)]
        with_source: bool,
    },
    /// Build gender-parallel TSV from a tagged corpus.
    GenParallel {
        #[command(flatten)]
        io: InOut,
        #[command(flatten)]
        tagged: TaggedInput,
        #[command(flatten)]
        rules: Rules,
        /// Put the label token at the start of the source field.
        #[arg(long)]
        prefix_label: bool,
    },
    /// Shuffle parallel TSV into train, dev and test files.
    Split {
        /// Parallel TSV input.
        input: Option<PathBuf>,
        /// Output files are <PREFIX>.train.tsv, <PREFIX>.dev.tsv and <PREFIX>.test.tsv.
        #[arg(long, short = 'o')]
        output_prefix: PathBuf,
        /// Exact number of dev records.
        #[arg(long, default_value_t = 1000)]
        dev: usize,
        /// Exact number of test records.
        #[arg(long, default_value_t = 3000)]
        test: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Input and output source fields carry a leading label token.
        #[arg(long)]
        prefix_label: bool,
        /// Also write the re-genderable dev/test records to <PREFIX>.review.tsv
        /// for manual checking.
        #[arg(long)]
        review: bool,
    },
    /// Train the classifier on parallel TSV (source and label columns).
    TrainClf {
        /// Parallel TSV input.
        input: Option<PathBuf>,
        /// Where to write the model.
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        prefix_label: bool,
        #[command(flatten)]
        hyper: Hyper,
        #[arg(long)]
        lexicon: Option<PathBuf>,
    },
    /// Label raw sentences, one per line, with a trained model.
    PredictClf {
        #[command(flatten)]
        io: InOut,
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        lexicon: Option<PathBuf>,
    },
    /// Word error rates from `hypothesis<TAB>reference<TAB>label` lines.
    EvalRewrite {
        #[command(flatten)]
        io: InOut,
        #[arg(long, value_enum, default_value_t = ReportFormat::Table)]
        format: ReportFormat,
    },
    /// Accuracy, precision and recall of a model on parallel TSV.
    EvalClf {
        #[command(flatten)]
        io: InOut,
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        prefix_label: bool,
        #[arg(long)]
        lexicon: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Table)]
        format: ReportFormat,
    },
}

#[derive(Debug, Args)]
pub struct InOut {
    /// Input file; standard input when absent or `-`.
    pub input: Option<PathBuf>,
    /// Output file; standard output when absent or `-`.
    #[arg(long, short = 'o')]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TaggedInput {
    /// Fail on the first malformed line instead of skipping its sentence.
    #[arg(long)]
    pub strict: bool,
    /// Also end a sentence after sentence-final punctuation (FS).
    #[arg(long)]
    pub split_on_fs: bool,
}

#[derive(Debug, Args)]
pub struct Rules {
    /// Pattern file; the built-in tables when absent.
    #[arg(long)]
    pub patterns: Option<PathBuf>,
    /// Exception lexicon file; the built-in lexicon when absent.
    #[arg(long)]
    pub lexicon: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Hyper {
    /// L2 regularisation strength.
    #[arg(long, default_value_t = 1e-4)]
    pub lambda: f64,
    #[arg(long, default_value_t = 10)]
    pub epochs: usize,
    /// Initial learning rate.
    #[arg(long, default_value_t = 0.5)]
    pub eta0: f64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Table,
    /// `key=value` lines.
    Kv,
}
