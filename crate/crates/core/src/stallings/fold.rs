use crate::words::{Alphabet, Letter, Word};

use super::graph::{CoreGraph, RegularGraph};
use super::slots::SlotTable;

/// An unfolded labeled multigraph: arbitrary edges, possibly clashing.
#[derive(Clone, Debug)]
pub struct GraphBuilder {
    alphabet: Alphabet,
    vertex_count: usize,
    base: usize,
    edges: Vec<(usize, Letter, usize)>,
}

impl GraphBuilder {
    /// A builder holding only the base vertex `0`.
    pub fn new(alphabet: Alphabet) -> Self {
        GraphBuilder { alphabet, vertex_count: 1, base: 0, edges: Vec::new() }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, Letter, usize)] {
        &self.edges
    }

    pub fn add_vertex(&mut self) -> usize {
        self.vertex_count += 1;
        self.vertex_count - 1
    }

    pub fn add_edge(&mut self, from: usize, letter: Letter, to: usize) {
        assert!(from < self.vertex_count && to < self.vertex_count);
        if letter.is_inverse() {
            self.edges.push((to, letter.inverse(), from));
        } else {
            self.edges.push((from, letter, to));
        }
    }

    /// Adds a path labeled `word` from `from` to `to` through fresh vertices.
    pub fn add_path(&mut self, from: usize, to: usize, word: &Word) {
        let letters = word.letters();
        if letters.is_empty() {
            // identifying two vertices needs an explicit merge; an empty
            // loop at one vertex adds nothing
            assert_eq!(from, to, "empty path between distinct vertices");
            return;
        }
        let mut cur = from;
        for (i, &l) in letters.iter().enumerate() {
            let next = if i + 1 == letters.len() { to } else { self.add_vertex() };
            self.add_edge(cur, l, next);
            cur = next;
        }
    }

    /// Adds a closed path at the base reading `word`.
    pub fn add_loop(&mut self, word: &Word) {
        let b = self.base;
        self.add_path(b, b, word);
    }

    /// Copies a regular graph in, identifying its base with `at`.
    /// Returns the map from `g`'s vertices to builder vertices.
    pub fn add_graph(&mut self, g: &RegularGraph, at: usize) -> Vec<usize> {
        let map: Vec<usize> = (0..g.vertex_count())
            .map(|v| if v == g.base() { at } else { self.add_vertex() })
            .collect();
        for (u, l, v) in g.edges() {
            self.add_edge(map[u], l, map[v]);
        }
        map
    }

    /// Folds in insertion order and returns the canonical base component.
    pub fn fold(&self) -> RegularGraph {
        let order: Vec<usize> = (0..self.edges.len()).collect();
        self.fold_in_order(&order).0.canonical()
    }

    /// Folds and trims: the core of the subgroup read at the base.
    pub fn core(&self) -> CoreGraph {
        self.fold().trimmed()
    }

    /// Folds, inserting edges in the given order (a permutation of edge
    /// indices). Returns the folded graph on surviving vertex classes plus
    /// the map from builder vertices to its vertices. Vertex classes are
    /// numbered in increasing order of their smallest member, so a vertex
    /// that is never merged with a smaller one keeps its relative order.
    pub fn fold_in_order(&self, order: &[usize]) -> (RegularGraph, Vec<usize>) {
        assert_eq!(order.len(), self.edges.len());
        let n = self.vertex_count;
        let w = self.alphabet.letter_count();
        let mut uf = UnionFind::new(n);
        let mut slots = SlotTable::new(w, n);
        let mut pending: Vec<(usize, usize)> = Vec::new();

        let attach = |uf: &mut UnionFind, slots: &mut SlotTable, pending: &mut Vec<_>, u: usize, l: Letter, v: usize| {
            let ru = uf.find(u);
            match slots.get(ru, l.index()) {
                None => slots.set(ru, l.index(), v as u32),
                Some(s) => pending.push((s as usize, v)),
            }
        };

        for &i in order {
            let (u, l, v) = self.edges[i];
            attach(&mut uf, &mut slots, &mut pending, u, l, v);
            attach(&mut uf, &mut slots, &mut pending, v, l.inverse(), u);
            while let Some((a, b)) = pending.pop() {
                let (ra, rb) = (uf.find(a), uf.find(b));
                if ra == rb {
                    continue;
                }
                let (keep, lose) = (ra.min(rb), ra.max(rb));
                uf.parent[lose] = keep;
                let moved: Vec<(usize, u32)> = slots.row(lose).collect();
                for (li, t) in moved {
                    slots.clear(lose, li);
                    match slots.get(keep, li) {
                        None => slots.set(keep, li, t),
                        Some(s) => pending.push((s as usize, t as usize)),
                    }
                }
            }
        }

        let mut class = vec![usize::MAX; n];
        let mut count = 0;
        for v in 0..n {
            let r = uf.find(v);
            if class[r] == usize::MAX {
                class[r] = count;
                count += 1;
            }
            class[v] = class[r];
        }
        let edges: Vec<_> = self.edges.iter().map(|&(u, l, v)| (class[u], l, class[v])).collect();
        let g = RegularGraph::from_edges(self.alphabet.clone(), count, class[self.base], &edges)
            .expect("folding produced an irregular graph");
        (g, class)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut v: usize) -> usize {
        let mut root = v;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[v] != root {
            let next = self.parent[v];
            self.parent[v] = root;
            v = next;
        }
        root
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Alphabet {
        "x,y,z".parse().unwrap()
    }

    #[test]
    fn duplicate_loops_fold_to_one() {
        let a = xy();
        let mut b = GraphBuilder::new(a.clone());
        let x = a.parse_word("x").unwrap();
        b.add_loop(&x);
        b.add_loop(&x);
        let g = b.fold();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn shared_prefix_merges() {
        let a = xy();
        let mut b = GraphBuilder::new(a.clone());
        let end1 = b.add_vertex();
        let end2 = b.add_vertex();
        b.add_path(0, end1, &a.parse_word("xy").unwrap());
        b.add_path(0, end2, &a.parse_word("xz").unwrap());
        let g = b.fold();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.degree(0), 1);
        assert_eq!(g.degree(1), 3);
    }

    #[test]
    fn cascading_folds() {
        // x^2 and x^3 loops collapse to a single x-loop
        let a = xy();
        let mut b = GraphBuilder::new(a.clone());
        b.add_loop(&a.parse_word("xx").unwrap());
        b.add_loop(&a.parse_word("xxx").unwrap());
        let g = b.fold();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.target(0, a.generator(0)), Some(0));
    }
}
