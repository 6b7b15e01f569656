use std::collections::VecDeque;

use crate::words::{Letter, Word};

use super::graph::RegularGraph;
use super::slots::SlotTable;

/// A free basis of the base-point subgroup of a connected regular graph,
/// read off a spanning tree: one basis element per non-tree edge `(u, x, v)`,
/// namely `tree(u) · x · tree(v)⁻¹`.
///
/// Only the tree and the co-tree edges are stored; words are spelled out on
/// request, since all of them together can be quadratic in the graph size.
#[derive(Clone, Debug)]
pub struct SchreierBasis {
    parent: Vec<Option<(usize, Letter)>>,
    cotree: Vec<(usize, Letter, usize)>,
    // per (vertex, letter) slot: 2 * basis index + inverse; empty on tree edges
    slot: SlotTable,
}

impl SchreierBasis {
    /// Basis from the canonical BFS tree (letters in alphabet order).
    pub fn bfs(g: &RegularGraph) -> Self {
        SchreierBasis::with_priority(g, |_, _| true)
    }

    /// Grows the spanning tree first through edges accepted by `preferred`
    /// (from the base), then through all edges. Co-tree edges accepted by
    /// `preferred` are listed first. Expects `g` to be connected.
    pub fn with_priority<P>(g: &RegularGraph, preferred: P) -> Self
    where
        P: Fn(usize, Letter) -> bool,
    {
        let n = g.vertex_count();
        let alphabet = g.alphabet();
        let mut parent: Vec<Option<(usize, Letter)>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        seen[g.base()] = true;

        let mut queue = VecDeque::from([g.base()]);
        let mut grow = |queue: &mut VecDeque<usize>, order: &mut Vec<usize>, restrict: bool| {
            while let Some(v) = queue.pop_front() {
                order.push(v);
                for (l, t) in g.neighbors(v) {
                    if restrict && !preferred(v, l) {
                        continue;
                    }
                    if !seen[t] {
                        seen[t] = true;
                        parent[t] = Some((v, l));
                        queue.push_back(t);
                    }
                }
            }
        };
        grow(&mut queue, &mut order, true);
        let mut queue: VecDeque<usize> = order.drain(..).collect();
        grow(&mut queue, &mut order, false);
        assert_eq!(order.len(), n, "spanning tree needs a connected graph");

        let is_tree = |u: usize, l: Letter, v: usize| {
            parent[v] == Some((u, l)) || parent[u] == Some((v, l.inverse()))
        };
        let (mut first, mut rest): (Vec<_>, Vec<_>) = g
            .edges()
            .filter(|&(u, l, v)| !is_tree(u, l, v))
            .partition(|&(u, l, v)| preferred(u, l) || preferred(v, l.inverse()));
        first.append(&mut rest);
        let cotree = first;

        let mut slot = SlotTable::new(alphabet.letter_count(), n);
        for (i, &(u, l, v)) in cotree.iter().enumerate() {
            slot.set(u, l.index(), 2 * i as u32);
            slot.set(v, l.inverse().index(), 2 * i as u32 + 1);
        }
        SchreierBasis { parent, cotree, slot }
    }

    pub fn rank(&self) -> usize {
        self.cotree.len()
    }

    /// The `i`-th basis element.
    pub fn word(&self, i: usize) -> Word {
        let (u, l, v) = self.cotree[i];
        let mut letters = self.tree_letters(u);
        letters.push(l);
        letters.extend(self.tree_letters(v).iter().rev().map(|l| l.inverse()));
        Word::reduce(letters)
    }

    pub fn words(&self) -> Vec<Word> {
        (0..self.rank()).map(|i| self.word(i)).collect()
    }

    /// Spells a word over the basis letters as a word over the graph's alphabet.
    pub fn spell(&self, w: &Word) -> Word {
        let mut letters = Vec::new();
        for &l in w.letters() {
            let b = self.word(l.generator());
            if l.is_inverse() {
                letters.extend(b.inverse().letters());
            } else {
                letters.extend(b.letters());
            }
        }
        Word::reduce(letters)
    }

    /// Tree edge into `v` from its parent, `None` at the base.
    pub fn tree_parent(&self, v: usize) -> Option<(usize, Letter)> {
        self.parent[v]
    }

    fn tree_letters(&self, mut v: usize) -> Vec<Letter> {
        let mut letters = Vec::new();
        while let Some((p, l)) = self.parent[v] {
            letters.push(l);
            v = p;
        }
        letters.reverse();
        letters
    }

    /// The non-tree edges `(from, positive letter, to)`, in basis order.
    pub fn cotree_edges(&self) -> &[(usize, Letter, usize)] {
        &self.cotree
    }

    /// For the edge leaving `v` with letter `l`: `None` on tree edges,
    /// otherwise the basis index and whether the edge is traversed against
    /// its co-tree orientation.
    pub fn cotree_slot(&self, v: usize, l: Letter) -> Option<(usize, bool)> {
        self.slot.get(v, l.index()).map(|code| ((code >> 1) as usize, code & 1 == 1))
    }

    /// Label of the tree path from the base to `v`.
    pub fn tree_word(&self, v: usize) -> Word {
        Word::from_reduced(self.tree_letters(v))
    }

    /// Rewrites `w` as a word in the basis letters (`Letter::new(i, _)` is the
    /// i-th basis element), or `None` when `w` is not read as a closed path
    /// at the base of `g`.
    pub fn express(&self, g: &RegularGraph, w: &Word) -> Option<Word> {
        let mut cur = g.base();
        let mut out = Vec::new();
        for &l in w.letters() {
            let code = self.cotree_slot(cur, l);
            cur = g.target(cur, l)?;
            if let Some((i, inv)) = code {
                out.push(Letter::new(i, inv));
            }
        }
        (cur == g.base()).then(|| Word::reduce(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stallings::GraphBuilder;
    use crate::words::Alphabet;

    #[test]
    fn basis_of_bouquet() {
        let a: Alphabet = "x,y".parse().unwrap();
        let mut b = GraphBuilder::new(a.clone());
        b.add_loop(&a.parse_word("x").unwrap());
        b.add_loop(&a.parse_word("y").unwrap());
        let g = b.fold();
        let basis = SchreierBasis::bfs(&g);
        assert_eq!(basis.rank(), 2);
        let w = a.parse_word("xyX").unwrap();
        let e = basis.express(&g, &w).unwrap();
        assert_eq!(e.len(), 3);
        assert_eq!(e.substitute(&basis.words()), w);
        assert_eq!(basis.spell(&e), w);
    }
}
