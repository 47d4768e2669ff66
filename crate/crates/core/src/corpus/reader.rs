use std::io::BufRead;

use log::warn;

use crate::error::{Error, Result};
use crate::tagset::{PosTag, TaggedSentence, Token};

/// How malformed lines are handled.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ReadMode {
    /// Skip the sentence containing the bad line and keep going.
    #[default]
    Lenient,
    /// Stop with an error at the first bad line.
    Strict,
}

/// Streaming reader for vertical `token<TAB>tag` text.
///
/// Blank lines separate sentences. Extra tab-separated columns (such as a
/// lemma) are ignored. With [`TaggedReader::split_on_fs`] a sentence also
/// ends after an `FS` token, provided it already holds a non-`FS` token, so
/// that opening marks like "¿" stay attached to their sentence.
pub struct TaggedReader<R> {
    input: R,
    mode: ReadMode,
    split_on_fs: bool,
    line_no: usize,
    buf: String,
    skipped: usize,
    done: bool,
}

impl<R: BufRead> TaggedReader<R> {
    pub fn new(input: R, mode: ReadMode) -> Self {
        TaggedReader {
            input,
            mode,
            split_on_fs: false,
            line_no: 0,
            buf: String::new(),
            skipped: 0,
            done: false,
        }
    }

    pub fn split_on_fs(mut self, enabled: bool) -> Self {
        self.split_on_fs = enabled;
        self
    }

    /// Sentences dropped so far because of malformed lines (lenient mode).
    pub fn skipped(&self) -> usize {
        self.skipped
    }

    fn next_sentence(&mut self) -> Result<Option<TaggedSentence>> {
        loop {
            match self.read_block()? {
                Block::Skipped => {
                    self.skipped += 1;
                    if self.done {
                        return Ok(None);
                    }
                }
                Block::Sentence(tokens) if tokens.is_empty() => return Ok(None),
                Block::Sentence(tokens) => return Ok(Some(TaggedSentence::new(tokens))),
            }
        }
    }

    fn read_block(&mut self) -> Result<Block> {
        let mut tokens: Vec<Token> = Vec::new();
        let mut bad_line: Option<usize> = None;

        loop {
            self.buf.clear();
            if self.input.read_line(&mut self.buf)? == 0 {
                self.done = true;
                break;
            }
            self.line_no += 1;
            let line = self.buf.trim_end_matches(['\n', '\r']);

            if line.trim().is_empty() {
                if tokens.is_empty() && bad_line.is_none() {
                    continue;
                }
                break;
            }
            if bad_line.is_some() {
                continue;
            }

            match parse_line(line) {
                Some(token) => {
                    let ends = self.split_on_fs
                        && *token.tag() == PosTag::FS
                        && tokens.iter().any(|t| *t.tag() != PosTag::FS);
                    tokens.push(token);
                    if ends {
                        break;
                    }
                }
                None => {
                    let err = Error::MalformedTaggedLine {
                        line: self.line_no,
                        content: line.to_owned(),
                    };
                    if self.mode == ReadMode::Strict {
                        self.done = true;
                        return Err(err);
                    }
                    warn!("{err}; sentence skipped");
                    bad_line = Some(self.line_no);
                }
            }
        }

        if bad_line.is_some() {
            return Ok(Block::Skipped);
        }
        Ok(Block::Sentence(tokens))
    }
}

enum Block {
    Sentence(Vec<Token>),
    Skipped,
}

fn parse_line(line: &str) -> Option<Token> {
    let mut fields = line.split('\t');
    let surface = fields.next()?.trim();
    let tag = fields.next()?.trim();
    if tag.is_empty() {
        return None;
    }
    Token::new(surface, PosTag::parse(tag)).ok()
}

impl<R: BufRead> Iterator for TaggedReader<R> {
    type Item = Result<TaggedSentence>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        self.next_sentence().transpose()
    }
}

/// Reads every sentence of a vertical-format stream.
pub fn read_tagged_corpus<R: BufRead>(input: R, mode: ReadMode) -> TaggedReader<R> {
    TaggedReader::new(input, mode)
}
