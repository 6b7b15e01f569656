use std::collections::VecDeque;
use std::ops::Deref;

use crate::words::{Alphabet, Letter, Word};

use super::slots::SlotTable;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range (graph has {count} vertices)")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("vertex {vertex} has two edges labeled {letter}")]
    NotRegular { vertex: usize, letter: String },
    #[error("graph is not connected")]
    Disconnected,
    #[error("vertex {0} has degree at most 1 and is not the base point")]
    Hanging(usize),
}

/// A finite labeled graph in which every vertex has at most one outgoing edge
/// per signed letter, with a distinguished base vertex.
///
/// Edges come in inverse pairs: `target(v, l) == Some(w)` iff
/// `target(w, l⁻¹) == Some(v)`. The graph need not be connected.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RegularGraph {
    alphabet: Alphabet,
    base: usize,
    slots: SlotTable,
}

impl RegularGraph {
    pub fn empty(alphabet: Alphabet, vertex_count: usize, base: usize) -> Self {
        assert!(base < vertex_count.max(1));
        let slots = SlotTable::new(alphabet.letter_count(), vertex_count.max(1));
        RegularGraph { alphabet, base, slots }
    }

    /// Builds a graph from edges `(from, letter, to)`; each edge implies its inverse.
    pub fn from_edges(
        alphabet: Alphabet,
        vertex_count: usize,
        base: usize,
        edges: &[(usize, Letter, usize)],
    ) -> Result<Self, GraphError> {
        let count = vertex_count.max(1);
        if base >= count {
            return Err(GraphError::VertexOutOfRange { vertex: base, count });
        }
        let mut g = RegularGraph::empty(alphabet, count, base);
        for &(u, l, v) in edges {
            for x in [u, v] {
                if x >= count {
                    return Err(GraphError::VertexOutOfRange { vertex: x, count });
                }
            }
            g.try_add_edge(u, l, v)?;
        }
        Ok(g)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn vertex_count(&self) -> usize {
        self.slots.vertex_count()
    }

    fn width(&self) -> usize {
        self.alphabet.letter_count()
    }

    pub fn target(&self, v: usize, l: Letter) -> Option<usize> {
        self.slots.get(v, l.index()).map(|t| t as usize)
    }

    /// The edges leaving `v`, as `(letter, target)` in letter order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (Letter, usize)> + '_ {
        self.slots.row(v).map(|(i, t)| (Letter::from_index(i), t as usize))
    }

    pub(crate) fn try_add_edge(&mut self, u: usize, l: Letter, v: usize) -> Result<(), GraphError> {
        let (fwd, back) = (self.target(u, l), self.target(v, l.inverse()));
        if fwd == Some(v) && back == Some(u) {
            return Ok(());
        }
        if fwd.is_some() {
            return Err(GraphError::NotRegular { vertex: u, letter: self.letter_name(l) });
        }
        if back.is_some() {
            return Err(GraphError::NotRegular { vertex: v, letter: self.letter_name(l.inverse()) });
        }
        self.slots.set(u, l.index(), v as u32);
        self.slots.set(v, l.inverse().index(), u as u32);
        Ok(())
    }

    pub(crate) fn add_edge(&mut self, u: usize, l: Letter, v: usize) {
        self.try_add_edge(u, l, v).expect("edge insertion breaks regularity");
    }

    pub(crate) fn remove_edge(&mut self, u: usize, l: Letter) {
        if let Some(v) = self.target(u, l) {
            self.slots.clear(u, l.index());
            self.slots.clear(v, l.inverse().index());
        }
    }

    pub(crate) fn set_base(&mut self, base: usize) {
        assert!(base < self.vertex_count());
        self.base = base;
    }

    fn letter_name(&self, l: Letter) -> String {
        self.alphabet.format_word(&Word::letter(l))
    }

    /// Number of edges (of either orientation) starting at `v`.
    pub fn degree(&self, v: usize) -> usize {
        self.slots.occupied(v)
    }

    /// Letters with no outgoing edge at `v`.
    pub fn missing(&self, v: usize) -> impl Iterator<Item = Letter> + '_ {
        self.alphabet.letters().filter(move |&l| self.target(v, l).is_none())
    }

    pub fn is_full(&self, v: usize) -> bool {
        self.degree(v) == self.width()
    }

    /// Every edge once, as `(from, positive letter, to)` ordered by `(from, letter)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, Letter, usize)> + '_ {
        (0..self.vertex_count())
            .flat_map(move |u| self.neighbors(u).filter(|(l, _)| !l.is_inverse()).map(move |(l, v)| (u, l, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    /// Follows `word` from `v`, returning the visited vertices.
    pub fn path(&self, v: usize, word: &Word) -> Option<Vec<usize>> {
        let mut out = Vec::with_capacity(word.len() + 1);
        out.push(v);
        let mut cur = v;
        for &l in word.letters() {
            cur = self.target(cur, l)?;
            out.push(cur);
        }
        Some(out)
    }

    pub fn read(&self, v: usize, word: &Word) -> Option<usize> {
        word.letters().iter().try_fold(v, |cur, &l| self.target(cur, l))
    }

    /// BFS order from the base using letters in canonical order.
    pub(crate) fn bfs_order(&self) -> Vec<usize> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::from([self.base]);
        seen[self.base] = true;
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for (_, t) in self.neighbors(v) {
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
        order
    }

    pub fn is_connected(&self) -> bool {
        self.bfs_order().len() == self.vertex_count()
    }

    /// Restricts to the base component and renumbers vertices in BFS order
    /// from the base. Returns the old-to-new vertex map alongside.
    pub fn canonical_with_map(&self) -> (RegularGraph, Vec<Option<usize>>) {
        let order = self.bfs_order();
        let mut map = vec![None; self.vertex_count()];
        for (new, &old) in order.iter().enumerate() {
            map[old] = Some(new);
        }
        let mut g = RegularGraph::empty(self.alphabet.clone(), order.len(), 0);
        for (new, &old) in order.iter().enumerate() {
            for (i, t) in self.slots.row(old) {
                g.slots.set(new, i, map[t as usize].unwrap() as u32);
            }
        }
        (g, map)
    }

    pub fn canonical(&self) -> RegularGraph {
        self.canonical_with_map().0
    }

    pub fn is_canonical(&self) -> bool {
        self.base == 0 && self.canonical() == *self
    }

    /// Iteratively deletes non-base vertices of degree at most 1, then
    /// canonicalizes. The result is the core of the base-point subgroup.
    pub fn trimmed(&self) -> CoreGraph {
        let n = self.vertex_count();
        let mut g = self.clone();
        let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
        let mut removed = vec![false; n];
        let mut stack: Vec<usize> = (0..n).filter(|&v| v != g.base && degree[v] <= 1).collect();
        while let Some(v) = stack.pop() {
            if removed[v] {
                continue;
            }
            removed[v] = true;
            let out: Vec<(Letter, usize)> = g.neighbors(v).collect();
            for (l, t) in out {
                if g.target(v, l).is_none() {
                    // the inverse end of a loop already went
                    continue;
                }
                g.remove_edge(v, l);
                if t != v {
                    degree[t] -= 1;
                    if t != g.base && degree[t] <= 1 && !removed[t] {
                        stack.push(t);
                    }
                }
            }
        }
        CoreGraph(g.canonical())
    }
}

/// A canonical core graph: connected, regular, every vertex except the
/// base has degree at least 2, vertices numbered by BFS from base 0.
///
/// Two core graphs over the same alphabet describe the same subgroup iff
/// they are equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CoreGraph(RegularGraph);

impl CoreGraph {
    /// The core of the subgroup read at `g`'s base point.
    pub fn from_regular(g: &RegularGraph) -> Self {
        g.trimmed()
    }

    /// Accepts `g` only if it already satisfies the core invariants
    /// (numbering may be arbitrary; the result is canonicalized).
    pub fn validate(g: &RegularGraph) -> Result<Self, GraphError> {
        if !g.is_connected() {
            return Err(GraphError::Disconnected);
        }
        if let Some(v) = (0..g.vertex_count()).find(|&v| v != g.base() && g.degree(v) <= 1) {
            return Err(GraphError::Hanging(v));
        }
        Ok(CoreGraph(g.canonical()))
    }

    pub fn as_regular(&self) -> &RegularGraph {
        &self.0
    }

    pub fn into_regular(self) -> RegularGraph {
        self.0
    }
}

impl Deref for CoreGraph {
    type Target = RegularGraph;

    fn deref(&self) -> &RegularGraph {
        &self.0
    }
}
