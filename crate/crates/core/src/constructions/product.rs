use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::stallings::{GraphBuilder, Index, RegularGraph, SchreierBasis, Subgroup};
use crate::words::Word;

use super::{rebase::Rebasing, ConstructionError, Limits};

/// Index of one subgroup inside another.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelativeIndex {
    Finite(usize),
    Infinite,
    NotSubgroup,
}

impl RelativeIndex {
    pub fn is_finite(self) -> bool {
        matches!(self, RelativeIndex::Finite(_))
    }
}

impl From<Index> for RelativeIndex {
    fn from(i: Index) -> Self {
        match i {
            Index::Finite(n) => RelativeIndex::Finite(n),
            Index::Infinite => RelativeIndex::Infinite,
        }
    }
}

impl fmt::Display for RelativeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelativeIndex::Finite(n) => write!(f, "{n}"),
            RelativeIndex::Infinite => f.write_str("infinite"),
            RelativeIndex::NotSubgroup => f.write_str("not-subgroup"),
        }
    }
}

/// Component of `(base, base)` in the product of two regular graphs.
pub(crate) fn product_graph(a: &RegularGraph, b: &RegularGraph) -> RegularGraph {
    product_graph_capped(a, b, usize::MAX).expect("uncapped")
}

/// As [`product_graph`]; `None` once the component exceeds `cap` vertices.
pub(crate) fn product_graph_capped(a: &RegularGraph, b: &RegularGraph, cap: usize) -> Option<RegularGraph> {
    let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
    let mut pairs = vec![(a.base(), b.base())];
    ids.insert(pairs[0], 0);
    let mut edges = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let (u, v) = pairs[i];
        // scan the sparser side
        let (small, other, flip) = if a.degree(u) <= b.degree(v) { (a, b, false) } else { (b, a, true) };
        let (su, ov) = if flip { (v, u) } else { (u, v) };
        for (l, s) in small.neighbors(su) {
            let Some(t) = other.target(ov, l) else { continue };
            let key = if flip { (t, s) } else { (s, t) };
            let next = pairs.len();
            let j = *ids.entry(key).or_insert(next);
            if j == next {
                pairs.push(key);
                queue.push_back(j);
                if pairs.len() > cap {
                    return None;
                }
            }
            if !l.is_inverse() {
                edges.push((i, l, j));
            }
        }
    }
    Some(RegularGraph::from_edges(a.alphabet().clone(), pairs.len(), 0, &edges).expect("product of regular graphs is regular"))
}

/// `A ∩ B`, via the product of the cores.
pub fn intersect(a: &Subgroup, b: &Subgroup) -> Subgroup {
    product_graph(a.core(), b.core()).trimmed().into()
}

/// [`intersect`] under a vertex cap.
pub(crate) fn intersect_within(
    a: &Subgroup,
    b: &Subgroup,
    limits: &Limits,
    step: &str,
) -> Result<Subgroup, ConstructionError> {
    match product_graph_capped(a.core(), b.core(), limits.max_vertices) {
        Some(g) => Ok(g.trimmed().into()),
        None => Err(limits.exceeded(step)),
    }
}

/// `⟨A, B⟩`: both cores wedged at the base and folded.
pub fn join(a: &Subgroup, b: &Subgroup) -> Subgroup {
    join_all([a, b])
}

pub fn join_all<'a>(subgroups: impl IntoIterator<Item = &'a Subgroup>) -> Subgroup {
    let mut subgroups = subgroups.into_iter().peekable();
    let alphabet = subgroups.peek().expect("join of no subgroups").alphabet().clone();
    let mut b = GraphBuilder::new(alphabet);
    for h in subgroups {
        b.add_graph(h.core(), 0);
    }
    b.core().into()
}

/// `[A : B]`, computed by rewriting `B` in a basis of `A`.
pub fn relative_index(a: &Subgroup, b: &Subgroup) -> RelativeIndex {
    if a.alphabet() != b.alphabet() || !a.contains_subgroup(b) {
        return RelativeIndex::NotSubgroup;
    }
    if a.is_trivial() {
        return RelativeIndex::Finite(1);
    }
    let r = Rebasing::new(a).expect("nontrivial");
    r.rewrite(b).expect("contained").index().into()
}

/// Left coset representatives of `B` in `A` (`B ≤ A` of finite index),
/// starting with `ε`. They are the inverses of a prefix-closed set of words
/// in `A`'s basis.
pub fn transversal(a: &Subgroup, b: &Subgroup) -> Result<Vec<Word>, ConstructionError> {
    let names = || ("B".to_string(), "A".to_string());
    match relative_index(a, b) {
        RelativeIndex::NotSubgroup => {
            let (inner, outer) = names();
            return Err(ConstructionError::NotContained { inner, outer });
        }
        RelativeIndex::Infinite => {
            let (inner, outer) = names();
            return Err(ConstructionError::InfiniteRelativeIndex { inner, outer });
        }
        RelativeIndex::Finite(_) => {}
    }
    if a.is_trivial() {
        return Ok(vec![Word::empty()]);
    }
    let r = Rebasing::new(a)?;
    let inner = r.rewrite(b).expect("contained");
    let tree = SchreierBasis::bfs(inner.core());
    Ok((0..inner.core().vertex_count())
        .map(|v| r.expand_word(&tree.tree_word(v).inverse()))
        .collect())
}
