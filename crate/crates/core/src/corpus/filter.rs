use std::fmt;

/// Longest segment kept by default, in untokenized words.
pub const DEFAULT_MAX_WORDS: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DropReason {
    TooLong,
    /// The segment has no alphabetic character at all.
    NonAlpha,
}

impl fmt::Display for DropReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DropReason::TooLong => "too_long",
            DropReason::NonAlpha => "non_alpha",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FilterDecision {
    Keep,
    Drop(DropReason),
}

/// Decides whether a raw line is a short, textual segment.
///
/// Words are counted on the untokenized line, split on whitespace.
pub fn filter_segment(raw: &str, max_words: usize) -> FilterDecision {
    if raw.split_whitespace().count() > max_words {
        FilterDecision::Drop(DropReason::TooLong)
    } else if !raw.chars().any(char::is_alphabetic) {
        FilterDecision::Drop(DropReason::NonAlpha)
    } else {
        FilterDecision::Keep
    }
}

/// Running totals over a filtered stream.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FilterStats {
    pub kept: u64,
    pub too_long: u64,
    pub non_alpha: u64,
}

impl FilterStats {
    pub fn record(&mut self, decision: FilterDecision) {
        match decision {
            FilterDecision::Keep => self.kept += 1,
            FilterDecision::Drop(DropReason::TooLong) => self.too_long += 1,
            FilterDecision::Drop(DropReason::NonAlpha) => self.non_alpha += 1,
        }
    }

    pub fn dropped(&self) -> u64 {
        self.too_long + self.non_alpha
    }
}
