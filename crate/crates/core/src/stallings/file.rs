//! Subgroup files.
//!
//! ```text
//! # comments run to the end of the line
//! alphabet: x,y
//! xyxyX
//! xyxxxYX
//! ```
//!
//! After the `alphabet:` header come either generator words, one per line,
//! or a serialized core (see [`Subgroup::serialize`]), recognised by its
//! `base=` header.

use thiserror::Error;

use crate::words::{Alphabet, Word, WordError};

use super::format::FormatError;
use super::Subgroup;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FileError {
    #[error("line {line}: expected 'alphabet: ...' header")]
    MissingAlphabet { line: usize },
    #[error("line {line}: {source}")]
    Alphabet { line: usize, source: WordError },
    #[error("line {line}, column {column}: {source}")]
    Word { line: usize, column: usize, source: WordError },
    #[error("serialized core: {0}")]
    Core(#[from] FormatError),
    #[error("serialized core is over {found}, header declares {declared}")]
    AlphabetMismatch { declared: String, found: String },
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(keep, _)| keep).trim()
}

/// Parses a subgroup file.
pub fn parse_subgroup_file(text: &str) -> Result<Subgroup, FileError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, strip_comment(l))).filter(|(_, l)| !l.is_empty());
    let Some((hline, header)) = lines.next() else {
        return Err(FileError::MissingAlphabet { line: 1 });
    };
    if header.starts_with("base=") {
        // a bare serialized core carries its own alphabet
        return Ok(Subgroup::deserialize(text)?);
    }
    let names = header.strip_prefix("alphabet:").ok_or(FileError::MissingAlphabet { line: hline })?;
    let alphabet: Alphabet = names.parse().map_err(|source| FileError::Alphabet { line: hline, source })?;

    let body: Vec<(usize, &str)> = lines.collect();
    if body.first().is_some_and(|(_, l)| l.starts_with("base=")) {
        let start = body[0].0;
        let rest: String = text.lines().skip(start - 1).collect::<Vec<_>>().join("\n");
        let h = Subgroup::deserialize(&rest).map_err(|e| shift_lines(e, start - 1))?;
        if *h.alphabet() != alphabet {
            return Err(FileError::AlphabetMismatch { declared: alphabet.to_string(), found: h.alphabet().to_string() });
        }
        return Ok(h);
    }
    let column_of = |e: &WordError| match e {
        WordError::UnknownLetter { position, .. } | WordError::UnknownToken { position, .. } => position + 1,
        _ => 1,
    };
    let mut words: Vec<Word> = Vec::with_capacity(body.len());
    for (line, text) in body {
        let w = alphabet
            .parse_word(text)
            .map_err(|source| FileError::Word { line, column: column_of(&source), source })?;
        words.push(w);
    }
    Ok(Subgroup::from_generators(&alphabet, &words))
}

fn shift_lines(e: FormatError, by: usize) -> FileError {
    FileError::Core(match e {
        FormatError::Syntax { line, message } => FormatError::Syntax { line: line + by, message },
        FormatError::Graph { line, source } => FormatError::Graph { line: line + by, source },
        other => other,
    })
}

/// Header plus the basis read off the BFS spanning tree, one word per line.
pub fn generators_file(h: &Subgroup) -> String {
    let mut out = format!("alphabet: {}\n", h.alphabet());
    for w in h.format_generators() {
        out.push_str(&w);
        out.push('\n');
    }
    out
}

/// Header plus the serialized core; linear in the size of the core.
pub fn core_file(h: &Subgroup) -> String {
    format!("alphabet: {}\n{}", h.alphabet(), h.serialize())
}
