//! Raw-text filtering, tagged corpus ingestion and gender-parallel data.

mod filter;
mod parallel;
mod reader;
mod split;

pub use filter::{filter_segment, DropReason, FilterDecision, FilterStats, DEFAULT_MAX_WORDS};
pub use parallel::{
    generate_parallel, read_parallel_tsv, records_for, PairingStats, ParallelGenerator,
    ParallelRecord,
};
pub use reader::{read_tagged_corpus, ReadMode, TaggedReader};
pub use split::{split_corpus, Split, SplitSpec};
