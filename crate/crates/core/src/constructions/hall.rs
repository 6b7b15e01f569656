use crate::stallings::{CoreGraph, GeneratorSet, GraphBuilder, RegularGraph, SchreierBasis, Subgroup};
use crate::words::Word;

use super::{rebase::Rebasing, ConstructionError};

/// `core(A)` with a path from the base for every excluded word, folded and
/// then completed to a full graph by pairing, for each generator, the
/// vertices lacking an outgoing edge with those lacking an incoming one (both
/// in increasing order). No vertices are added after the paths. The vertices
/// of `core(A)` keep their numbers.
pub(crate) fn completed_graph(a: &Subgroup, exclude: &[Word]) -> RegularGraph {
    let alphabet = a.alphabet().clone();
    let mut b = GraphBuilder::new(alphabet.clone());
    b.add_graph(a.core(), 0);
    for s in exclude {
        let end = b.add_vertex();
        b.add_path(0, end, s);
    }
    let order: Vec<usize> = (0..b.edges().len()).collect();
    let (mut g, class) = b.fold_in_order(&order);
    debug_assert!((0..a.core().vertex_count()).all(|v| class[v] == v));
    for x in alphabet.letters().filter(|l| !l.is_inverse()) {
        let n = g.vertex_count();
        let lacking_out: Vec<usize> = (0..n).filter(|&v| g.target(v, x).is_none()).collect();
        let lacking_in: Vec<usize> = (0..n).filter(|&v| g.target(v, x.inverse()).is_none()).collect();
        for (u, v) in lacking_out.into_iter().zip(lacking_in) {
            g.add_edge(u, x, v);
        }
    }
    g
}

/// A finite-index subgroup `M ≥ A` containing none of the excluded words.
pub fn hall_completion(a: &Subgroup, exclude: &[Word]) -> Result<Subgroup, ConstructionError> {
    if let Some(s) = exclude.iter().find(|s| a.contains(s)) {
        return Err(ConstructionError::ExcludedMember { word: a.alphabet().format_word(s) });
    }
    let g = completed_graph(a, exclude);
    Ok(CoreGraph::validate(&g).expect("completion is a full connected graph").into())
}

/// A finite-index subgroup `E ≥ A` with a free basis whose first
/// `rank(A)` elements freely generate `A`.
#[derive(Clone, Debug)]
pub struct FreeFactorEmbedding {
    pub rebasing: Rebasing,
    /// The basis letters generating `A`, over the basis alphabet.
    pub factor: GeneratorSet,
}

impl FreeFactorEmbedding {
    pub fn ambient(&self) -> &Subgroup {
        self.rebasing.ambient()
    }

    pub fn factor_rank(&self) -> usize {
        self.factor.len()
    }

    /// `F(Y)` over the basis alphabet; it expands to `A`.
    pub fn factor_subgroup(&self) -> Subgroup {
        Subgroup::free_factor(self.rebasing.basis_alphabet(), &self.factor)
    }
}

pub fn free_factor_embedding(a: &Subgroup) -> Result<FreeFactorEmbedding, ConstructionError> {
    if a.is_trivial() {
        return Err(ConstructionError::Trivial { which: "A".into() });
    }
    let g = completed_graph(a, &[]);
    let (canon, map) = g.canonical_with_map();
    let mut old_of = vec![0; canon.vertex_count()];
    for (old, new) in map.iter().enumerate() {
        if let Some(new) = new {
            old_of[*new] = old;
        }
    }
    let ca = a.core();
    let basis = SchreierBasis::with_priority(&canon, |v, l| {
        let old = old_of[v];
        old < ca.vertex_count() && ca.target(old, l).is_some()
    });
    let k = a.rank();
    let e: Subgroup = CoreGraph::validate(&canon).expect("full graph").into();
    let rebasing = Rebasing::with_basis(e, basis)?;
    let factor = GeneratorSet::new(rebasing.basis_alphabet(), 0..k);
    Ok(FreeFactorEmbedding { rebasing, factor })
}
