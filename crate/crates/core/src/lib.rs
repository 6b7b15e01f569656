//! Subgroup arithmetic in finitely generated free groups.
//!
//! Subgroups are represented by their core graphs ([`stallings::Subgroup`]).
//! On top of folding, membership and index computations, the
//! [`constructions`] module builds the finite-index shrinking of one subgroup
//! that keeps its join with another of infinite index, together with the
//! auxiliary covers, saturations and normal cores it needs. The
//! [`enumeration`] and [`actions`] modules iterate that construction into an
//! increasing chain of subgroups and study the coset action of `F` on it.

pub mod words;
pub mod stallings;
pub mod constructions;
pub mod enumeration;
pub mod actions;

pub use stallings::{GeneratorSet, Index, Subgroup};
pub use words::{Alphabet, Letter, Word};
