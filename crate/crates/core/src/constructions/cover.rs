use crate::stallings::{bridges, frame_of, GeneratorSet, RegularGraph, Subgroup};
use crate::words::Letter;

use super::log::{Check, Expect, StageLog, Step};
use super::{ensure, ConstructionError};

/// First vertex (in canonical order) that is deficit for the full alphabet
/// and lies outside the `Y`-frame.
pub fn deficit_outside_frame(h: &Subgroup, y: &GeneratorSet) -> Option<usize> {
    let g = h.core();
    let frame = frame_of(g, y);
    (0..g.vertex_count()).find(|&v| !frame.contains(v) && !g.is_full(v))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverBranch {
    /// A bridge with label outside `Y` already separates a deficit vertex
    /// from the frame; `K = H`.
    Bridge { edge: (usize, Letter, usize) },
    /// `K` is the base-point subgroup of a cyclic `sheets`-fold cover of
    /// `core(H)`, obtained by redirecting copies of `edge` from one sheet to
    /// the next.
    Cyclic { edge: (usize, Letter, usize), sheets: usize },
}

#[derive(Clone, Debug)]
pub struct Cover {
    pub subgroup: Subgroup,
    pub branch: CoverBranch,
    /// A deficit vertex of `core(K)` outside `frame(K, Y)`.
    pub witness: usize,
}

/// A subgroup `K ≤ H` of index 1 or `sheets` whose core has a deficit vertex
/// outside its `Y`-frame.
pub fn cover_with_outside_deficit(
    h: &Subgroup,
    y: &GeneratorSet,
    sheets: usize,
) -> Result<(Cover, StageLog), ConstructionError> {
    if sheets < 2 {
        return Err(ConstructionError::SheetCount(sheets));
    }
    if h.index().is_finite() {
        return Err(ConstructionError::FiniteIndex { which: "H".into() });
    }
    let g = h.core();
    if g.edges().all(|(_, l, _)| y.contains_letter(l)) {
        return Err(ConstructionError::InsideFactor { frame: y.format(h.alphabet()) });
    }

    let cut = bridges(g);
    let (k, branch) = match cut.iter().find(|(_, l, _)| !y.contains_letter(*l)) {
        Some(&edge) => (h.clone(), CoverBranch::Bridge { edge }),
        None => {
            let edge = g
                .edges()
                .find(|(_, l, _)| !y.contains_letter(*l))
                .expect("an edge outside Y exists");
            (cyclic_cover(g, edge, sheets), CoverBranch::Cyclic { edge, sheets })
        }
    };

    let mut step = Step::new("cover-surgery");
    step.input("H", h).output("K", &k);
    step.certify(Check::RelativeIndex { outer: "H".into(), inner: "K".into() }, Expect::Finite);
    step.certify(Check::DeficitOutsideFrame { subgroup: "K".into(), frame: y.clone() }, Expect::Yes);
    ensure(&step)?;
    let witness = deficit_outside_frame(&k, y).expect("certified");
    let mut log = StageLog::new();
    log.push(step);
    Ok((Cover { subgroup: k, branch, witness }, log))
}

/// `sheets` copies of `g`; the copy of `edge` in sheet `i` lands in sheet
/// `i + 1 (mod sheets)`. Based at the base of sheet 0, then trimmed.
fn cyclic_cover(g: &RegularGraph, edge: (usize, Letter, usize), sheets: usize) -> Subgroup {
    let n = g.vertex_count();
    let mut edges = Vec::with_capacity(sheets * g.edge_count());
    for c in 0..sheets {
        for (u, l, v) in g.edges() {
            let to_sheet = if (u, l, v) == edge { (c + 1) % sheets } else { c };
            edges.push((c * n + u, l, to_sheet * n + v));
        }
    }
    let cover = RegularGraph::from_edges(g.alphabet().clone(), sheets * n, g.base(), &edges)
        .expect("covering graph is regular");
    cover.trimmed().into()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{relative_index, RelativeIndex};
    use crate::words::{Alphabet, Word};

    fn xy() -> Alphabet {
        "x,y".parse().unwrap()
    }

    fn sub(gens: &[&str]) -> Subgroup {
        let a = xy();
        let words: Vec<Word> = gens.iter().map(|g| a.parse_word(g).unwrap()).collect();
        Subgroup::from_generators(&a, &words)
    }

    fn y_only() -> GeneratorSet {
        GeneratorSet::new(&xy(), [1])
    }

    #[test]
    fn bridge_branch_keeps_subgroup() {
        let h = sub(&["xyX"]);
        let (cover, log) = cover_with_outside_deficit(&h, &y_only(), 2).unwrap();
        assert!(matches!(cover.branch, CoverBranch::Bridge { .. }));
        assert_eq!(cover.subgroup, h);
        assert_eq!(cover.witness, 1);
        assert_eq!(h.frame(&y_only()).vertices, vec![0]);
        assert!(log.all_ok());
    }

    #[test]
    fn cyclic_branch_has_prescribed_index() {
        let h = sub(&["x", "yxY"]);
        for j in [2, 3, 5] {
            let (cover, log) = cover_with_outside_deficit(&h, &y_only(), j).unwrap();
            assert!(matches!(cover.branch, CoverBranch::Cyclic { sheets, .. } if sheets == j));
            assert_eq!(relative_index(&h, &cover.subgroup), RelativeIndex::Finite(j));
            assert!(!cover.subgroup.frame(&y_only()).contains(cover.witness));
            log.reverify().unwrap();
        }
    }

    #[test]
    fn preconditions() {
        assert!(matches!(
            cover_with_outside_deficit(&sub(&["y"]), &y_only(), 2),
            Err(ConstructionError::InsideFactor { .. })
        ));
        assert!(matches!(
            cover_with_outside_deficit(&sub(&["x", "y"]), &y_only(), 2),
            Err(ConstructionError::FiniteIndex { .. })
        ));
        assert_eq!(
            cover_with_outside_deficit(&sub(&["x"]), &y_only(), 1).unwrap_err(),
            ConstructionError::SheetCount(1)
        );
    }
}
