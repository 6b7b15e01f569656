//! Constructions involving several subgroups: products, Hall completions,
//! covers, absorbing pairs, infinite-index families and the normalized
//! envelope behind [`shrink_for_infinite_join`].
//!
//! Existence-style constructions return one valid answer among many; their
//! correctness is carried by the certificates recorded in the returned
//! [`StageLog`], not by the exact graphs.

mod cover;
mod envelope;
mod family;
mod hall;
pub mod log;
mod pair;
mod product;
mod rebase;
mod shrink;
mod supplement;

use thiserror::Error;

pub use cover::{cover_with_outside_deficit, deficit_outside_frame, Cover, CoverBranch};
pub use envelope::{normal_core_in, normalized_envelope, normalized_envelope_within, Envelope};
pub use family::{infinite_index_family, infinite_index_family_within, Family};
pub use hall::{free_factor_embedding, hall_completion, FreeFactorEmbedding};
pub use log::{Certificate, Check, Expect, StageLog, Step};
pub use pair::{absorbing_pair, absorbing_pair_within, saturate_frame, AbsorbingPair};
pub use product::{intersect, join, join_all, relative_index, transversal, RelativeIndex};
pub use rebase::{RebasedSubgroup, Rebasing};
pub use shrink::{shrink_for_infinite_join, shrink_for_infinite_join_within};
pub use supplement::{check_small_cancellation, small_cancellation_family, supplement_witness, SmallCancellation, SupplementWitness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("subgroups are over different alphabets")]
    AlphabetMismatch,
    #[error("{which} has finite index in F")]
    FiniteIndex { which: String },
    #[error("{which} is trivial")]
    Trivial { which: String },
    #[error("excluded word '{word}' lies in the subgroup")]
    ExcludedMember { word: String },
    #[error("subgroup lies inside the free factor generated by {{{frame}}}")]
    InsideFactor { frame: String },
    #[error("cover index must be at least 2, got {0}")]
    SheetCount(usize),
    #[error("{inner} is not a subgroup of {outer}")]
    NotContained { inner: String, outer: String },
    #[error("{inner} has infinite index in {outer}")]
    InfiniteRelativeIndex { inner: String, outer: String },
    #[error("rank must be at least 2, got {0}")]
    RankTooSmall(usize),
    #[error("relator word is trivial")]
    TrivialRelator,
    #[error("empty list of subgroups")]
    EmptyFamily,
    #[error("step '{step}': intermediate graph exceeds {limit} vertices")]
    ResourceLimit { step: String, limit: usize },
    #[error("step '{step}': certificate failed: {detail}")]
    Certificate { step: String, detail: String },
}

/// Caps on intermediate graph sizes. The constructions can grow
/// exponentially in the number of coset representatives, so every
/// potentially large product or expansion is checked against `max_vertices`
/// and aborts with [`ConstructionError::ResourceLimit`] instead of
/// exhausting memory.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_vertices: usize,
}

impl Limits {
    pub const UNBOUNDED: Limits = Limits { max_vertices: usize::MAX };

    pub fn new(max_vertices: usize) -> Self {
        Limits { max_vertices }
    }

    pub(crate) fn exceeded(&self, step: &str) -> ConstructionError {
        ConstructionError::ResourceLimit { step: step.to_string(), limit: self.max_vertices }
    }

    pub(crate) fn check(&self, step: &str, vertices: usize) -> Result<(), ConstructionError> {
        if vertices > self.max_vertices {
            Err(self.exceeded(step))
        } else {
            Ok(())
        }
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_vertices: 2_000_000 }
    }
}

fn same_alphabet(subgroups: &[&crate::stallings::Subgroup]) -> Result<(), ConstructionError> {
    match subgroups.split_first() {
        Some((first, rest)) if rest.iter().any(|h| h.alphabet() != first.alphabet()) => {
            Err(ConstructionError::AlphabetMismatch)
        }
        _ => Ok(()),
    }
}

fn require_infinite(h: &crate::stallings::Subgroup, which: &str) -> Result<(), ConstructionError> {
    if h.index().is_finite() {
        Err(ConstructionError::FiniteIndex { which: which.to_string() })
    } else {
        Ok(())
    }
}

/// Turns failed certificates of a finished step into an error.
fn ensure(step: &Step) -> Result<(), ConstructionError> {
    match step.failures().next() {
        None => Ok(()),
        Some(c) => Err(ConstructionError::Certificate {
            step: step.name.clone(),
            detail: format!("{:?} expected {:?}, observed {}", c.check, c.expect, c.observed),
        }),
    }
}
