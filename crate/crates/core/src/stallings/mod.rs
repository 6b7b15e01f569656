//! Core graphs of finitely generated subgroups and single-subgroup queries.
//!
//! The core keeps its handle: the base point is never moved, so a subgroup
//! and its conjugates have different cores.

mod basis;
mod bridges;
mod file;
mod fold;
mod format;
mod graph;
mod slots;

use std::collections::VecDeque;
use std::fmt;

pub use basis::SchreierBasis;
pub use bridges::bridges;
pub use file::{core_file, generators_file, parse_subgroup_file, FileError};
pub use fold::GraphBuilder;
pub use format::FormatError;
pub use graph::{CoreGraph, GraphError, RegularGraph};

use crate::words::{Alphabet, Letter, Word, WordError};

/// Index of a subgroup in an ambient group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Index {
    Finite(usize),
    Infinite,
}

impl Index {
    pub fn is_finite(self) -> bool {
        matches!(self, Index::Finite(_))
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Finite(n) => write!(f, "{n}"),
            Index::Infinite => f.write_str("infinite"),
        }
    }
}

/// A subset `Y` of the generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorSet {
    mask: Vec<bool>,
}

impl GeneratorSet {
    pub fn new(alphabet: &Alphabet, generators: impl IntoIterator<Item = usize>) -> Self {
        let mut mask = vec![false; alphabet.rank()];
        for g in generators {
            mask[g] = true;
        }
        GeneratorSet { mask }
    }

    pub fn all(alphabet: &Alphabet) -> Self {
        GeneratorSet { mask: vec![true; alphabet.rank()] }
    }

    /// Parses comma-separated generator names, e.g. `y` or `x,z`.
    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Self, WordError> {
        let mut gens = Vec::new();
        for (position, name) in text.split(',').map(str::trim).enumerate() {
            if name.is_empty() {
                continue;
            }
            let g = alphabet
                .position(name)
                .ok_or_else(|| WordError::UnknownToken { token: name.to_string(), position })?;
            gens.push(g);
        }
        Ok(GeneratorSet::new(alphabet, gens))
    }

    pub fn contains(&self, generator: usize) -> bool {
        self.mask.get(generator).copied().unwrap_or(false)
    }

    pub fn contains_letter(&self, l: Letter) -> bool {
        self.contains(l.generator())
    }

    pub fn generators(&self) -> impl Iterator<Item = usize> + '_ {
        self.mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }

    pub fn len(&self) -> usize {
        self.generators().count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Signed letters over the set, in alphabet order.
    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.generators().flat_map(|g| [Letter::new(g, false), Letter::new(g, true)])
    }

    pub fn format(&self, alphabet: &Alphabet) -> String {
        self.generators().map(|g| alphabet.name(g)).collect::<Vec<_>>().join(",")
    }
}

/// Vertices whose star lacks some letter of a query set `Y^{±1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeficitReport {
    pub entries: Vec<(usize, Vec<Letter>)>,
}

impl DeficitReport {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total number of missing (vertex, letter) slots.
    pub fn deficit(&self) -> usize {
        self.entries.iter().map(|(_, ls)| ls.len()).sum()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.entries.iter().any(|(u, _)| *u == v)
    }
}

/// The handle path from the base: the vertices visited and its label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HandlePath {
    pub vertices: Vec<usize>,
    pub label: Word,
}

impl HandlePath {
    pub fn len(&self) -> usize {
        self.label.len()
    }

    pub fn is_empty(&self) -> bool {
        self.label.is_empty()
    }

    pub fn end(&self) -> usize {
        *self.vertices.last().unwrap()
    }
}

/// The maximal connected subgraph through the base using only `Y`-letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, Letter, usize)>,
    member: Vec<bool>,
}

impl Frame {
    pub fn contains(&self, v: usize) -> bool {
        self.member.get(v).copied().unwrap_or(false)
    }
}

/// Computes the frame of `g` for `y`.
pub fn frame_of(g: &RegularGraph, y: &GeneratorSet) -> Frame {
    let n = g.vertex_count();
    let mut member = vec![false; n];
    member[g.base()] = true;
    let mut queue = VecDeque::from([g.base()]);
    let mut vertices = Vec::new();
    while let Some(v) = queue.pop_front() {
        vertices.push(v);
        for (l, t) in g.neighbors(v) {
            if y.contains_letter(l) && !member[t] {
                member[t] = true;
                queue.push_back(t);
            }
        }
    }
    vertices.sort_unstable();
    let edges = g
        .edges()
        .filter(|&(u, l, _)| member[u] && y.contains_letter(l))
        .collect();
    Frame { vertices, edges, member }
}

pub fn deficits_of(g: &RegularGraph, y: &GeneratorSet) -> DeficitReport {
    let entries = (0..g.vertex_count())
        .filter_map(|v| {
            let missing: Vec<Letter> = y.letters().filter(|&l| g.target(v, l).is_none()).collect();
            (!missing.is_empty()).then_some((v, missing))
        })
        .collect();
    DeficitReport { entries }
}

/// A finitely generated subgroup of `F(X)`, represented by its core graph.
///
/// Equality is equality of subgroups; the display name is ignored.
#[derive(Clone, Debug)]
pub struct Subgroup {
    core: CoreGraph,
    name: Option<String>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.core == other.core
    }
}

impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.core.hash(state)
    }
}

impl From<CoreGraph> for Subgroup {
    fn from(core: CoreGraph) -> Self {
        Subgroup { core, name: None }
    }
}

impl Subgroup {
    /// The core of `⟨generators⟩`: a bouquet of loops at the base, folded and
    /// trimmed. Empty words are ignored.
    pub fn from_generators(alphabet: &Alphabet, generators: &[Word]) -> Self {
        let mut b = GraphBuilder::new(alphabet.clone());
        for w in generators {
            b.add_loop(w);
        }
        b.core().into()
    }

    pub fn trivial(alphabet: &Alphabet) -> Self {
        Subgroup::from_generators(alphabet, &[])
    }

    /// The whole free group.
    pub fn full(alphabet: &Alphabet) -> Self {
        Subgroup::free_factor(alphabet, &GeneratorSet::all(alphabet))
    }

    /// `F(Y)` for a subset `Y` of the generators.
    pub fn free_factor(alphabet: &Alphabet, y: &GeneratorSet) -> Self {
        let gens: Vec<Word> = y.generators().map(|g| Word::letter(alphabet.generator(g))).collect();
        Subgroup::from_generators(alphabet, &gens)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn core(&self) -> &CoreGraph {
        &self.core
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.core.alphabet()
    }

    pub fn is_trivial(&self) -> bool {
        self.core.edge_count() == 0
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.core.read(0, w) == Some(0)
    }

    /// The closed path at the base labeled `w`, when `w` is a member.
    pub fn membership_path(&self, w: &Word) -> Option<Vec<usize>> {
        self.core.path(0, w).filter(|p| *p.last().unwrap() == 0)
    }

    pub fn contains_subgroup(&self, other: &Subgroup) -> bool {
        other.immersion_into(self).is_some()
    }

    /// The base-preserving label-preserving map `core(self) → core(target)`,
    /// which exists exactly when `self ≤ target`.
    pub fn immersion_into(&self, target: &Subgroup) -> Option<Vec<usize>> {
        if self.alphabet() != target.alphabet() {
            return None;
        }
        let (g, t) = (&self.core, &target.core);
        let mut map = vec![usize::MAX; g.vertex_count()];
        map[0] = 0;
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            for (l, u) in g.neighbors(v) {
                let image = t.target(map[v], l)?;
                if map[u] == usize::MAX {
                    map[u] = image;
                    queue.push_back(u);
                } else if map[u] != image {
                    return None;
                }
            }
        }
        Some(map)
    }

    /// Index in `F`: finite exactly when the core has no deficit vertex, and
    /// then it equals the number of vertices.
    pub fn index(&self) -> Index {
        if (0..self.core.vertex_count()).all(|v| self.core.is_full(v)) {
            Index::Finite(self.core.vertex_count())
        } else {
            Index::Infinite
        }
    }

    pub fn deficits(&self, y: &GeneratorSet) -> DeficitReport {
        deficits_of(&self.core, y)
    }

    pub fn frame(&self, y: &GeneratorSet) -> Frame {
        frame_of(&self.core, y)
    }

    /// Free rank: edges − vertices + 1.
    pub fn rank(&self) -> usize {
        self.core.edge_count() + 1 - self.core.vertex_count()
    }

    pub fn schreier_basis(&self) -> SchreierBasis {
        SchreierBasis::bfs(&self.core)
    }

    pub fn basis(&self) -> Vec<Word> {
        self.schreier_basis().words()
    }

    /// `w` as a word in the basis returned by [`Subgroup::basis`].
    pub fn express(&self, w: &Word) -> Option<Word> {
        self.schreier_basis().express(&self.core, w)
    }

    /// The handle: maximal path from a degree-1 base through vertices of
    /// degree 2, ending at the first vertex of degree at least 3.
    pub fn handle(&self) -> HandlePath {
        let g = &self.core;
        let mut vertices = vec![0];
        let mut letters = Vec::new();
        if g.degree(0) != 1 {
            return HandlePath { vertices, label: Word::empty() };
        }
        let mut cur = 0;
        let mut came_by: Option<Letter> = None;
        loop {
            let next = g
                .alphabet()
                .letters()
                .filter(|&l| Some(l.inverse()) != came_by)
                .find_map(|l| g.target(cur, l).map(|t| (l, t)));
            let Some((l, t)) = next else { break };
            letters.push(l);
            vertices.push(t);
            cur = t;
            came_by = Some(l);
            if g.degree(t) != 2 || t == 0 || vertices[..vertices.len() - 1].contains(&t) {
                break;
            }
        }
        HandlePath { vertices, label: Word::from_reduced(letters) }
    }

    /// Removes the handle. The result is the core of `p⁻¹ H p` for the handle
    /// label `p`, based at the handle's end.
    pub fn without_handle(&self) -> (Word, Subgroup) {
        let handle = self.handle();
        if handle.is_empty() {
            return (Word::empty(), self.clone());
        }
        let mut g = self.core.as_regular().clone();
        for pair in handle.vertices.windows(2).zip(handle.label.letters()) {
            g.remove_edge(pair.0[0], *pair.1);
        }
        g.set_base(handle.end());
        (handle.label, CoreGraph::from_regular(&g).into())
    }

    pub fn is_isomorphic(&self, other: &Subgroup) -> bool {
        self.core == other.core
    }

    /// `g · H · g⁻¹`: a new base joined to the old one by a path labeled
    /// `g`, folded and trimmed.
    pub fn conjugate(&self, g: &Word) -> Subgroup {
        if g.is_empty() {
            return self.clone();
        }
        let mut b = GraphBuilder::new(self.alphabet().clone());
        let end = b.add_vertex();
        b.add_path(0, end, g);
        b.add_graph(&self.core, end);
        b.core().into()
    }

    pub fn format_generators(&self) -> Vec<String> {
        self.basis().iter().map(|w| self.alphabet().format_word(w)).collect()
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.format_generators().join(", "))
    }
}
