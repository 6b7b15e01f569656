use std::collections::HashMap;
use std::fmt;

use crate::stallings::Subgroup;
use crate::words::{Alphabet, Letter, Word};

use super::ConstructionError;

/// Outcome of the small-cancellation scan over a family of positive words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SmallCancellation {
    Holds,
    NotPositive { word: usize },
    /// `|u_word| < 10·|w|`.
    TooShort { word: usize, length: usize, needed: usize },
    /// The window `u_word[start..start+length]` also occurs in `u_other` at
    /// `other_start` (possibly `other == word`).
    Repeated { word: usize, start: usize, length: usize, other: usize, other_start: usize },
}

impl SmallCancellation {
    pub fn holds(&self) -> bool {
        *self == SmallCancellation::Holds
    }
}

impl fmt::Display for SmallCancellation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SmallCancellation::Holds => f.write_str("holds"),
            SmallCancellation::NotPositive { word } => write!(f, "u{} is not a positive word", word + 1),
            SmallCancellation::TooShort { word, length, needed } => {
                write!(f, "u{} has length {length} < {needed}", word + 1)
            }
            SmallCancellation::Repeated { word, start, length, other, other_start } => write!(
                f,
                "window u{}[{start}..{}] reappears in u{} at {other_start}",
                word + 1,
                start + length,
                other + 1
            ),
        }
    }
}

/// Every subword of `u_i` of length at least `ceil(|u_i|/10)` occurs exactly
/// once in `u_i` and nowhere in the other words, and `|u_i| ≥ 10·relator_len`.
///
/// It suffices to scan windows of length exactly `ceil(|u_i|/10)`: a longer
/// subword contains one of them.
pub fn check_small_cancellation(us: &[Word], relator_len: usize) -> SmallCancellation {
    if let Some(word) = us.iter().position(|u| !u.is_positive()) {
        return SmallCancellation::NotPositive { word };
    }
    if let Some(word) = us.iter().position(|u| u.len() < 10 * relator_len) {
        return SmallCancellation::TooShort { word, length: us[word].len(), needed: 10 * relator_len };
    }
    for (i, u) in us.iter().enumerate() {
        let length = u.len().div_ceil(10).max(1);
        if u.len() < length {
            continue;
        }
        let mut seen: HashMap<&[Letter], usize> = HashMap::new();
        for (start, window) in u.letters().windows(length).enumerate() {
            if let Some(&first) = seen.get(window) {
                return SmallCancellation::Repeated { word: i, start: first, length, other: i, other_start: start };
            }
            seen.insert(window, start);
        }
        for (j, v) in us.iter().enumerate().filter(|&(j, _)| j != i) {
            for (other_start, window) in v.letters().windows(length).enumerate() {
                if let Some(&start) = seen.get(window) {
                    return SmallCancellation::Repeated { word: i, start, length, other: j, other_start };
                }
            }
        }
    }
    SmallCancellation::Holds
}

/// `count` positive words over the first two generators, each a product of
/// `blocks` blocks `x1·x2^c`. The exponents `c = 1 + i + count·t` (word `i`,
/// block `t`) are distinct across the family and increase along each word.
pub fn small_cancellation_family(alphabet: &Alphabet, count: usize, blocks: usize) -> Vec<Word> {
    let (x, y) = (alphabet.generator(0), alphabet.generator(1));
    (0..count)
        .map(|i| {
            let mut letters = Vec::new();
            for t in 0..blocks {
                letters.push(x);
                letters.extend(std::iter::repeat(y).take(1 + i + count * t));
            }
            Word::reduce(letters)
        })
        .collect()
}

/// An `r`-generated subgroup `H` of infinite index with every basis element
/// congruent to a generator modulo the normal closure of `w`.
#[derive(Clone, Debug)]
pub struct SupplementWitness {
    pub subgroup: Subgroup,
    pub u_words: Vec<Word>,
    pub v_words: Vec<Word>,
    pub blocks: usize,
    pub small_cancellation: SmallCancellation,
    /// Named checks and their outcomes.
    pub checks: Vec<(String, bool)>,
}

impl SupplementWitness {
    pub fn all_ok(&self) -> bool {
        self.small_cancellation.holds() && self.checks.iter().all(|(_, ok)| *ok)
    }
}

/// Builds `v_i = u_{2i-1} w u_{2i-1}⁻¹ · x_i · u_{2i} w u_{2i}⁻¹` from a
/// family of positive words that passes [`check_small_cancellation`],
/// growing the family until it does.
pub fn supplement_witness(alphabet: &Alphabet, w: &Word) -> Result<SupplementWitness, ConstructionError> {
    let r = alphabet.rank();
    if r < 2 {
        return Err(ConstructionError::RankTooSmall(r));
    }
    if w.is_empty() {
        return Err(ConstructionError::TrivialRelator);
    }
    let mut blocks = 4;
    let (us, sc) = loop {
        let us = small_cancellation_family(alphabet, 2 * r, blocks);
        let sc = check_small_cancellation(&us, w.len());
        if sc.holds() {
            break (us, sc);
        }
        blocks += blocks.div_ceil(4);
    };

    let mut vs = Vec::with_capacity(r);
    let mut identities = Vec::with_capacity(r);
    for i in 0..r {
        let (p, q) = (&us[2 * i], &us[2 * i + 1]);
        let xi = Word::letter(alphabet.generator(i));
        let v = w.conjugate_by(p).concat(&xi).concat(&w.conjugate_by(q));
        let lhs = v.concat(&xi.inverse());
        let rhs = w.conjugate_by(p).concat(&w.conjugate_by(&xi.concat(q)));
        identities.push(lhs == rhs);
        vs.push(v);
    }
    let h = Subgroup::from_generators(alphabet, &vs);

    let mut checks = vec![
        ("rank equals r".to_string(), h.rank() == r),
        ("infinite index".to_string(), !h.index().is_finite()),
    ];
    for i in 0..r {
        let name = alphabet.name(i);
        checks.push((format!("{name} not in H"), !h.contains(&Word::letter(alphabet.generator(i)))));
        checks.push((format!("v{} {name}^-1 is a product of two conjugates of w", i + 1), identities[i]));
    }
    Ok(SupplementWitness { subgroup: h, u_words: us, v_words: vs, blocks, small_cancellation: sc, checks })
}
