use std::collections::HashMap;
use std::sync::Arc;

use crate::stallings::{GraphBuilder, SchreierBasis, Subgroup};
use crate::words::{Alphabet, Letter, Word};

use super::{ConstructionError, Limits};

/// Coordinates on a nontrivial subgroup `E`: a free basis `b1..bk` of `E`
/// and rewriting in both directions between words over `F`'s alphabet and
/// words over the basis alphabet.
#[derive(Clone, Debug)]
pub struct Rebasing {
    ambient: Subgroup,
    basis: SchreierBasis,
    alphabet: Alphabet,
}

impl Rebasing {
    /// Uses the breadth-first spanning tree of `E`'s core.
    pub fn new(ambient: &Subgroup) -> Result<Self, ConstructionError> {
        Rebasing::with_basis(ambient.clone(), ambient.schreier_basis())
    }

    pub(crate) fn with_basis(ambient: Subgroup, basis: SchreierBasis) -> Result<Self, ConstructionError> {
        if basis.rank() == 0 {
            return Err(ConstructionError::Trivial { which: "ambient subgroup".into() });
        }
        let alphabet = Alphabet::numbered("b", basis.rank()).expect("valid basis names");
        Ok(Rebasing { ambient, basis, alphabet })
    }

    pub fn ambient(&self) -> &Subgroup {
        &self.ambient
    }

    pub fn basis_alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// The basis, as words over `F`'s alphabet.
    pub fn basis_words(&self) -> Vec<Word> {
        self.basis.words()
    }

    pub fn rank(&self) -> usize {
        self.basis.rank()
    }

    /// `w ∈ E` rewritten in basis letters; `None` if `w ∉ E`.
    pub fn rewrite_word(&self, w: &Word) -> Option<Word> {
        self.basis.express(self.ambient.core(), w)
    }

    /// A subgroup of `E` as a subgroup of the free group on the basis;
    /// `None` if it is not contained in `E`.
    ///
    /// Works on graphs: `core(sub)` immerses into `core(E)`; contracting the
    /// preimage of `E`'s spanning tree leaves one edge per preimage of a
    /// co-tree edge, labeled by the corresponding basis letter.
    pub fn rewrite(&self, sub: &Subgroup) -> Option<Subgroup> {
        let map = sub.immersion_into(&self.ambient)?;
        let g = sub.core();
        let mut parent: Vec<usize> = (0..g.vertex_count()).collect();
        fn find(parent: &mut [usize], mut v: usize) -> usize {
            while parent[v] != v {
                parent[v] = parent[parent[v]];
                v = parent[v];
            }
            v
        }
        for (u, l, v) in g.edges() {
            if self.basis.cotree_slot(map[u], l).is_none() {
                let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                parent[ru.max(rv)] = ru.min(rv);
            }
        }
        let mut b = GraphBuilder::new(self.alphabet.clone());
        let mut node = vec![usize::MAX; g.vertex_count()];
        node[0] = 0;
        for v in 0..g.vertex_count() {
            let r = find(&mut parent, v);
            if node[r] == usize::MAX {
                node[r] = b.add_vertex();
            }
            node[v] = node[r];
        }
        for (u, l, v) in g.edges() {
            if let Some((i, inv)) = self.basis.cotree_slot(map[u], l) {
                b.add_edge(node[u], Letter::new(i, inv), node[v]);
            }
        }
        Some(b.core().into())
    }

    pub fn expand_word(&self, w: &Word) -> Word {
        self.basis.spell(w)
    }

    /// Replaces every edge of the inner core by a path labeled with the
    /// corresponding basis word, then trims.
    ///
    /// Each inner vertex `c` gets its own copy of (the needed part of) the
    /// spanning tree of `core(E)`, and the inner edge `c -b_i-> d` becomes
    /// the co-tree edge of `b_i` from `c`'s copy to `d`'s. The result immerses
    /// into `core(E)`, so no folding is required.
    pub fn expand(&self, inner: &Subgroup) -> Subgroup {
        self.expand_within(inner, &Limits::UNBOUNDED, "expand").expect("uncapped")
    }

    pub(crate) fn expand_within(
        &self,
        inner: &Subgroup,
        limits: &Limits,
        step: &str,
    ) -> Result<Subgroup, ConstructionError> {
        let g = inner.core();
        let mut b = GraphBuilder::new(self.ambient.alphabet().clone());
        let mut nodes: HashMap<(usize, usize), usize> = HashMap::from([((0, 0), 0)]);
        let mut node = |b: &mut GraphBuilder, c: usize, v: usize| -> Result<usize, ConstructionError> {
            let mut chain = Vec::new();
            let mut cur = v;
            let mut top = loop {
                if let Some(&n) = nodes.get(&(c, cur)) {
                    break n;
                }
                match self.basis.tree_parent(cur) {
                    Some((p, l)) => {
                        chain.push((cur, l));
                        cur = p;
                    }
                    None => {
                        let n = b.add_vertex();
                        nodes.insert((c, cur), n);
                        break n;
                    }
                }
            };
            for &(w, l) in chain.iter().rev() {
                let n = b.add_vertex();
                b.add_edge(top, l, n);
                nodes.insert((c, w), n);
                top = n;
            }
            limits.check(step, nodes.len())?;
            Ok(top)
        };
        for (c, l, d) in g.edges() {
            let (u, x, v) = self.basis.cotree_edges()[l.generator()];
            let from = node(&mut b, c, u)?;
            let to = node(&mut b, d, v)?;
            b.add_edge(from, x, to);
        }
        Ok(b.core().into())
    }
}

/// A subgroup of `E` held in `E`'s basis coordinates.
#[derive(Clone, Debug)]
pub struct RebasedSubgroup {
    pub rebasing: Arc<Rebasing>,
    pub inner: Subgroup,
}

impl RebasedSubgroup {
    pub fn new(rebasing: Arc<Rebasing>, sub: &Subgroup) -> Option<Self> {
        let inner = rebasing.rewrite(sub)?;
        Some(RebasedSubgroup { rebasing, inner })
    }

    /// The same subgroup over `F`'s alphabet.
    pub fn to_ambient(&self) -> Subgroup {
        self.rebasing.expand(&self.inner)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rewrite_and_expand_are_inverse() {
        let a: Alphabet = "x,y".parse().unwrap();
        let w = |t: &str| a.parse_word(t).unwrap();
        let e = Subgroup::from_generators(&a, &[w("x"), w("yy"), w("yxY")]);
        let r = Arc::new(Rebasing::new(&e).unwrap());
        assert_eq!(r.rank(), 3);
        let h = Subgroup::from_generators(&a, &[w("xx"), w("yyyy"), w("yxxY")]);
        let rb = RebasedSubgroup::new(r.clone(), &h).unwrap();
        assert_eq!(rb.to_ambient(), h);
        assert!(r.rewrite(&Subgroup::from_generators(&a, &[w("y")])).is_none());
        let g = w("xyyX");
        assert_eq!(r.expand_word(&r.rewrite_word(&g).unwrap()), g);
    }

    #[test]
    fn trivial_ambient_rejected() {
        let a: Alphabet = "x,y".parse().unwrap();
        assert!(Rebasing::new(&Subgroup::trivial(&a)).is_err());
    }
}
