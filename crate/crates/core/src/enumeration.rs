//! Enumerating infinite-index subgroups and growing the chain
//! `R₁ ≤ R₂ ≤ …` in which every enumerated subgroup eventually meets the
//! chain in a finite-index subgroup of itself.
//!
//! The enumeration runs over multisets of reduced words ordered by total
//! length, then lexicographically by word position in shortlex order (letters
//! compared in the order `x, X, y, Y, …`). Each subgroup is emitted once, at
//! its first generating multiset; finite-index subgroups are skipped.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

use thiserror::Error;

use crate::constructions::{
    intersect, join, relative_index, shrink_for_infinite_join_within, Check, ConstructionError, Expect, Limits,
    RelativeIndex, StageLog, Step,
};
use crate::stallings::{core_file, parse_subgroup_file, FileError, Subgroup};
use crate::words::{Alphabet, Letter, Word};

/// All nonempty reduced words of length ≤ `max_len`, in shortlex order.
pub fn shortlex_words(alphabet: &Alphabet, max_len: usize) -> Vec<Word> {
    let letters: Vec<Letter> = alphabet.letters().collect();
    let mut out: Vec<Word> = Vec::new();
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * letters.len());
        for w in &layer {
            for &l in &letters {
                if w.last() != Some(l.inverse()) {
                    let mut v = w.letters().to_vec();
                    v.push(l);
                    next.push(Word::reduce(v));
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Deterministic stream of the distinct infinite-index subgroups generated
/// by word multisets of total length ≤ `budget`. The trivial subgroup comes
/// first.
#[derive(Clone, Debug)]
pub struct SubgroupStream {
    alphabet: Alphabet,
    budget: usize,
    words: Vec<Word>,
    seen: HashSet<Subgroup>,
    total: usize,
    pending: std::vec::IntoIter<Vec<usize>>,
}

pub fn enumerate_subgroups(alphabet: &Alphabet, budget: usize) -> SubgroupStream {
    SubgroupStream {
        alphabet: alphabet.clone(),
        budget,
        words: shortlex_words(alphabet, budget),
        seen: HashSet::new(),
        total: 0,
        pending: vec![Vec::new()].into_iter(),
    }
}

impl SubgroupStream {
    pub fn budget(&self) -> usize {
        self.budget
    }

    /// Non-decreasing index sequences whose word lengths sum to `total`,
    /// in lexicographic order.
    fn multisets(&self, total: usize) -> Vec<Vec<usize>> {
        fn go(words: &[Word], from: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if left == 0 {
                out.push(cur.clone());
                return;
            }
            for i in from..words.len() {
                let n = words[i].len();
                if n > left {
                    // shortlex: every later word is at least as long
                    break;
                }
                cur.push(i);
                go(words, i, left - n, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(&self.words, 0, total, &mut Vec::new(), &mut out);
        out
    }
}

impl Iterator for SubgroupStream {
    type Item = (Vec<Word>, Subgroup);

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            for ms in self.pending.by_ref() {
                let gens: Vec<Word> = ms.iter().map(|&i| self.words[i].clone()).collect();
                let h = Subgroup::from_generators(&self.alphabet, &gens);
                if h.index().is_finite() || !self.seen.insert(h.clone()) {
                    continue;
                }
                return Some((gens, h));
            }
            if self.total >= self.budget {
                return None;
            }
            self.total += 1;
            self.pending = self.multisets(self.total).into_iter();
        }
    }
}

#[derive(Debug, Error)]
pub enum PrefixError {
    #[error("need at least one stage")]
    NoStages,
    #[error("alphabet must have rank at least 2, got {0}")]
    RankTooSmall(usize),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{path}: {source}")]
    File { path: String, source: FileError },
    #[error("{path}: {message}")]
    Layout { path: String, message: String },
}

/// One step of the chain: `Lᵢ`, the finite-index `Hᵢ ≤ Lᵢ` and
/// `Rᵢ = ⟨Rᵢ₋₁, Hᵢ⟩`.
#[derive(Clone, Debug)]
pub struct Stage {
    pub generators: Vec<Word>,
    pub l: Subgroup,
    pub h: Subgroup,
    pub r: Subgroup,
}

/// Why a prefix stopped short of the requested number of stages.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Truncation {
    /// The enumeration budget ran out.
    Exhausted { budget: usize },
    /// A construction hit its size cap while processing `Lᵢ`.
    ResourceLimit { stage: usize, detail: String },
}

#[derive(Clone, Debug)]
pub struct RPrefix {
    pub alphabet: Alphabet,
    pub requested: usize,
    pub stages: Vec<Stage>,
    pub log: StageLog,
    pub truncated: Option<Truncation>,
}

impl RPrefix {
    /// `R_N` for the last stage reached.
    pub fn last(&self) -> Option<&Subgroup> {
        self.stages.last().map(|s| &s.r)
    }

    pub fn len(&self) -> usize {
        self.stages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stages.is_empty()
    }
}

/// Runs the chain construction for `stages` steps over the subgroups of
/// [`enumerate_subgroups`]`(alphabet, budget)`, the trivial one skipped.
pub fn build_r_prefix(alphabet: &Alphabet, stages: usize, budget: usize, limits: &Limits) -> Result<RPrefix, PrefixError> {
    if stages == 0 {
        return Err(PrefixError::NoStages);
    }
    if alphabet.rank() < 2 {
        return Err(PrefixError::RankTooSmall(alphabet.rank()));
    }
    let mut prefix = RPrefix {
        alphabet: alphabet.clone(),
        requested: stages,
        stages: Vec::new(),
        log: StageLog::new(),
        truncated: None,
    };
    let mut stream = enumerate_subgroups(alphabet, budget).filter(|(_, h)| !h.is_trivial());
    while prefix.stages.len() < stages {
        let Some((generators, l)) = stream.next() else {
            prefix.truncated = Some(Truncation::Exhausted { budget });
            break;
        };
        let i = prefix.stages.len() + 1;
        let (h, r, step) = match prefix.last() {
            None => {
                let mut step = Step::new("start-chain");
                step.input("L", &l).output("R", &l);
                step.certify(Check::Index { subgroup: "R".into() }, Expect::Infinite);
                (l.clone(), l.clone(), step)
            }
            Some(prev) => match shrink_for_infinite_join_within(prev, &l, &[], limits) {
                Err(ConstructionError::ResourceLimit { step, limit }) => {
                    prefix.truncated = Some(Truncation::ResourceLimit {
                        stage: i,
                        detail: format!("step '{step}' exceeds {limit} vertices"),
                    });
                    break;
                }
                Err(e) => unreachable!("chain stays of infinite index and L has infinite index: {e}"),
                Ok((h, _)) => {
                    let r = join(prev, &h);
                    let mut step = Step::new("extend-chain");
                    step.input("R_prev", prev).input("L", &l).output("H", &h).output("R", &r);
                    step.certify(Check::RelativeIndex { outer: "L".into(), inner: "H".into() }, Expect::Finite);
                    step.certify(Check::Index { subgroup: "R".into() }, Expect::Infinite);
                    step.certify(Check::RelativeIndex { outer: "R".into(), inner: "R_prev".into() }, Expect::Contained);
                    (h, r, step)
                }
            },
        };
        assert!(step.all_ok(), "stage {i} certificate failed");
        prefix.log.push(step);
        prefix.log.push(Step::merge_placeholder());
        prefix.stages.push(Stage { generators, l, h, r });
    }
    Ok(prefix)
}

/// `[L : L ∩ R_N]`, with a note on how much it proves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RVerification {
    pub index: RelativeIndex,
    /// `L` has finite index in `F`. Then the limit subgroup meets `L` in an
    /// infinite-index subgroup; an infinite value here is only finite-stage
    /// evidence of that.
    pub l_finite_in_f: bool,
}

impl RVerification {
    pub fn note(&self) -> &'static str {
        match (self.l_finite_in_f, self.index.is_finite()) {
            (true, false) => "L has finite index in F: infinite here is finite-stage evidence, not proof",
            (true, true) => "L has finite index in F, yet meets this stage with finite index",
            (false, true) => "finite at this stage, hence for the limit subgroup as well",
            (false, false) => "infinite at this stage; later stages may still make it finite",
        }
    }
}

pub fn verify_r_property(prefix: &RPrefix, l: &Subgroup) -> Option<RVerification> {
    let r = prefix.last()?;
    Some(verify_against(r, l))
}

pub fn verify_against(r: &Subgroup, l: &Subgroup) -> RVerification {
    let meet = intersect(l, r);
    RVerification { index: relative_index(l, &meet), l_finite_in_f: l.index().is_finite() }
}

/// The commutator `[x₁, x₂] = x₁x₂x₁⁻¹x₂⁻¹` is not in `R_N`: evidence that
/// the chain contains no nontrivial normal subgroup.
pub fn commutator_outside(r: &Subgroup) -> bool {
    let a = r.alphabet();
    let (x, y) = (a.generator(0), a.generator(1));
    !r.contains(&Word::reduce([x, y, x.inverse(), y.inverse()]))
}

impl RPrefix {
    /// Plain-text overview: one line per stage plus the truncation status.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "alphabet: {}", self.alphabet);
        let _ = writeln!(out, "requested stages: {}", self.requested);
        let _ = writeln!(out, "reached stages: {}", self.stages.len());
        for (i, s) in self.stages.iter().enumerate() {
            let gens: Vec<String> = s.generators.iter().map(|w| self.alphabet.format_word(w)).collect();
            let _ = writeln!(
                out,
                "stage {}: L=<{}> [L:H]={} R vertices={} rank={} index={}",
                i + 1,
                gens.join(", "),
                relative_index(&s.l, &s.h),
                s.r.core().vertex_count(),
                s.r.rank(),
                s.r.index(),
            );
        }
        if let Some(r) = self.last() {
            let _ = writeln!(out, "commutator outside R: {}", if commutator_outside(r) { "yes" } else { "no" });
        }
        match &self.truncated {
            None => out.push_str("truncated: no\n"),
            Some(Truncation::Exhausted { budget }) => {
                let _ = writeln!(out, "truncated: enumeration budget {budget} exhausted");
            }
            Some(Truncation::ResourceLimit { stage, detail }) => {
                let _ = writeln!(out, "truncated: stage {stage}: {detail}");
            }
        }
        out
    }

    /// Writes `R01.grp, L01.grp, H01.grp, …`, `log.txt` and `summary.txt`.
    pub fn write_dir(&self, dir: &Path) -> Result<(), PrefixError> {
        let io_err = |p: &Path| {
            let path = p.display().to_string();
            move |source| PrefixError::Io { path, source }
        };
        fs::create_dir_all(dir).map_err(io_err(dir))?;
        let write = |name: String, text: String| {
            let p = dir.join(name);
            fs::write(&p, text).map_err(io_err(&p))
        };
        for (i, s) in self.stages.iter().enumerate() {
            write(format!("L{:02}.grp", i + 1), core_file(&s.l))?;
            write(format!("H{:02}.grp", i + 1), core_file(&s.h))?;
            write(format!("R{:02}.grp", i + 1), core_file(&s.r))?;
        }
        write("log.txt".into(), self.log.to_string())?;
        write("summary.txt".into(), self.summary())?;
        Ok(())
    }
}

/// The last `Rᵢ` of a directory written by [`RPrefix::write_dir`].
pub fn read_last_stage(dir: &Path) -> Result<Subgroup, PrefixError> {
    let entries = fs::read_dir(dir).map_err(|source| PrefixError::Io { path: dir.display().to_string(), source })?;
    let mut best: Option<(usize, std::path::PathBuf)> = None;
    for e in entries {
        let p = e.map_err(|source| PrefixError::Io { path: dir.display().to_string(), source })?.path();
        let Some(name) = p.file_name().and_then(|n| n.to_str()) else { continue };
        let Some(i) = name.strip_prefix('R').and_then(|n| n.strip_suffix(".grp")).and_then(|n| n.parse::<usize>().ok())
        else {
            continue;
        };
        if best.as_ref().is_none_or(|(j, _)| i > *j) {
            best = Some((i, p));
        }
    }
    let Some((_, path)) = best else {
        return Err(PrefixError::Layout { path: dir.display().to_string(), message: "no Rnn.grp stage files".into() });
    };
    let text = fs::read_to_string(&path).map_err(|source| PrefixError::Io { path: path.display().to_string(), source })?;
    parse_subgroup_file(&text).map_err(|source| PrefixError::File { path: path.display().to_string(), source })
}
