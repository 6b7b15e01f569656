//! Elements of a free group `F(X)` as freely reduced letter sequences.
//!
//! Text syntax: when every generator name is a single lowercase ASCII letter,
//! words are written compactly (`xyX`, uppercase = inverse). Otherwise, or
//! whenever the text contains whitespace or `^`, the token form is used:
//! `x1 x2^-1 x1^3`. The identity is written `1` (the empty string also parses).

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("unknown letter '{ch}' at position {position}")]
    UnknownLetter { ch: char, position: usize },
    #[error("unknown token '{token}' at position {position}")]
    UnknownToken { token: String, position: usize },
    #[error("invalid generator name '{0}'")]
    InvalidName(String),
    #[error("duplicate generator name '{0}'")]
    DuplicateName(String),
    #[error("an alphabet needs at least one generator")]
    EmptyAlphabet,
}

/// An ordered, finite set of generator names.
///
/// Declaration order is significant: every "first"/"smallest" choice made
/// downstream (BFS renumbering, edge selection, saturation order) uses it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Arc<[String]>,
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self, WordError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(WordError::EmptyAlphabet);
        }
        let mut seen = std::collections::HashSet::with_capacity(names.len());
        for name in &names {
            let mut chars = name.chars();
            let valid = matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
                && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(WordError::InvalidName(name.clone()));
            }
            if !seen.insert(name.as_str()) {
                return Err(WordError::DuplicateName(name.clone()));
            }
        }
        Ok(Alphabet { names: names.into() })
    }

    /// `prefix1, prefix2, ..., prefix<k>`; used for bases of subgroups.
    pub fn numbered(prefix: &str, k: usize) -> Result<Self, WordError> {
        Alphabet::new((1..=k).map(|i| format!("{prefix}{i}")))
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    /// Number of signed letters, `2r`.
    pub fn letter_count(&self) -> usize {
        2 * self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, generator: usize) -> &str {
        &self.names[generator]
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn generator(&self, i: usize) -> Letter {
        assert!(i < self.rank(), "generator {i} out of range");
        Letter::new(i, false)
    }

    /// All signed letters in canonical order `x, X, y, Y, ...`.
    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.letter_count()).map(Letter::from_index)
    }

    /// True when every name is a single lowercase ASCII letter, so that the
    /// compact syntax is unambiguous.
    pub fn is_compact(&self) -> bool {
        self.names.iter().all(|n| n.len() == 1)
    }

    pub fn parse_word(&self, text: &str) -> Result<Word, WordError> {
        let trimmed = text.trim();
        if trimmed.is_empty() || trimmed == "1" {
            return Ok(Word::empty());
        }
        if self.is_compact() && !trimmed.contains(|c: char| c.is_whitespace() || c == '^') {
            self.parse_compact(text)
        } else {
            self.parse_tokens(text)
        }
    }

    fn parse_compact(&self, text: &str) -> Result<Word, WordError> {
        let mut letters = Vec::with_capacity(text.len());
        for (position, ch) in text.chars().enumerate() {
            let lower = ch.to_ascii_lowercase();
            let gen = self
                .names
                .iter()
                .position(|n| n.len() == 1 && n.starts_with(lower))
                .filter(|_| ch.is_ascii_alphabetic())
                .ok_or(WordError::UnknownLetter { ch, position })?;
            letters.push(Letter::new(gen, ch.is_ascii_uppercase()));
        }
        Ok(Word::reduce(letters))
    }

    fn parse_tokens(&self, text: &str) -> Result<Word, WordError> {
        let mut letters = Vec::new();
        let mut offset = 0;
        for token in text.split_whitespace() {
            let position = text[offset..].find(token).map_or(offset, |p| p + offset);
            offset = position + token.len();
            let bad = || WordError::UnknownToken { token: token.to_string(), position };
            if token == "1" {
                continue;
            }
            let (name, exponent) = match token.split_once('^') {
                Some((name, exp)) => (name, exp.parse::<i64>().map_err(|_| bad())?),
                None => (token, 1),
            };
            let gen = self.position(name).ok_or_else(bad)?;
            let letter = Letter::new(gen, exponent < 0);
            letters.extend(std::iter::repeat(letter).take(exponent.unsigned_abs() as usize));
        }
        Ok(Word::reduce(letters))
    }

    pub fn format_word(&self, word: &Word) -> String {
        if word.is_empty() {
            return "1".to_string();
        }
        if self.is_compact() {
            return word
                .letters()
                .iter()
                .map(|l| {
                    let c = self.names[l.generator()].chars().next().unwrap();
                    if l.is_inverse() {
                        c.to_ascii_uppercase()
                    } else {
                        c
                    }
                })
                .collect();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut run = word.letters().chunk_by(|a, b| a == b);
        for chunk in &mut run {
            let l = chunk[0];
            let name = &self.names[l.generator()];
            let exp = chunk.len() as i64 * if l.is_inverse() { -1 } else { 1 };
            if exp == 1 {
                parts.push(name.clone());
            } else {
                parts.push(format!("{name}^{exp}"));
            }
        }
        parts.join(" ")
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.names.join(","))
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alphabet({self})")
    }
}

impl FromStr for Alphabet {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Alphabet::new(s.split(',').map(str::trim).filter(|n| !n.is_empty()))
    }
}

/// A generator or its inverse, encoded as `2 * generator + inverse`.
///
/// The encoding makes `inverse` a bit flip and gives the canonical letter
/// order `x, X, y, Y, ...` used for tie-breaking.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u32);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter((generator as u32) << 1 | inverse as u32)
    }

    pub fn from_index(index: usize) -> Self {
        Letter(index as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn inverse(self) -> Self {
        Letter(self.0 ^ 1)
    }

    /// The positive letter with the same generator.
    pub fn positive(self) -> Self {
        Letter(self.0 & !1)
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.generator(), if self.is_inverse() { "⁻" } else { "" })
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    /// Free reduction with a single left-to-right stack pass.
    pub fn reduce<I: IntoIterator<Item = Letter>>(raw: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in raw {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Wraps letters already known to be reduced.
    pub(crate) fn from_reduced(letters: Vec<Letter>) -> Self {
        debug_assert!(letters.windows(2).all(|p| p[0] != p[1].inverse()));
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Self {
        let common = self
            .0
            .iter()
            .rev()
            .zip(other.0.iter())
            .take_while(|(a, b)| **a == b.inverse())
            .count();
        let mut letters = Vec::with_capacity(self.len() + other.len() - 2 * common);
        letters.extend_from_slice(&self.0[..self.len() - common]);
        letters.extend_from_slice(&other.0[common..]);
        Word(letters)
    }

    /// `g · self · g⁻¹`, reduced.
    pub fn conjugate_by(&self, g: &Word) -> Self {
        g.concat(self).concat(&g.inverse())
    }

    pub fn pow(&self, exponent: i64) -> Self {
        let base = if exponent < 0 { self.inverse() } else { self.clone() };
        (0..exponent.unsigned_abs()).fold(Word::empty(), |acc, _| acc.concat(&base))
    }

    /// True when no letter is an inverse.
    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|l| !l.is_inverse())
    }

    /// Substitutes a word for each generator and reduces.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut raw = Vec::new();
        for l in &self.0 {
            let image = &images[l.generator()];
            if l.is_inverse() {
                raw.extend(image.0.iter().rev().map(|x| x.inverse()));
            } else {
                raw.extend_from_slice(&image.0);
            }
        }
        Word::reduce(raw)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word{:?}", self.0)
    }
}

impl Mul for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        self.concat(rhs)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word::reduce(iter)
    }
}
