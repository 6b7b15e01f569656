use crate::stallings::{frame_of, CoreGraph, GeneratorSet, RegularGraph, Subgroup};

use super::cover::cover_with_outside_deficit;
use super::hall::free_factor_embedding;
use super::log::{Check, Expect, StageLog, Step};
use super::product::intersect_within;
use super::{ensure, require_infinite, same_alphabet, ConstructionError, Limits};

/// `A1 ≤ A` and `B0 ≤ B` of finite index, both inside `B1`, which has
/// infinite index in `F`.
#[derive(Clone, Debug)]
pub struct AbsorbingPair {
    pub a1: Subgroup,
    pub b0: Subgroup,
    pub b1: Subgroup,
}

/// Adds `Y`-edges between frame vertices until no frame vertex is
/// `Y`-deficit. For a frame vertex `v` without an incoming `y`-edge, the
/// maximal `y`-path from `v` ends at some `q` without an outgoing `y`-edge;
/// the edge `q → v` labeled `y` closes it. Vertices are visited in
/// increasing order, letters in alphabet order; no vertices are added.
pub fn saturate_frame(g: &RegularGraph, y: &GeneratorSet) -> RegularGraph {
    let mut g = g.clone();
    let frame = frame_of(&g, y);
    for &v in &frame.vertices {
        for l in y.letters() {
            if g.target(v, l).is_some() {
                continue;
            }
            let step = l.inverse();
            let mut q = v;
            while let Some(t) = g.target(q, step) {
                q = t;
            }
            g.add_edge(q, step, v);
        }
    }
    g
}

/// Finite-index subgroups of `A` and `B` that sit together inside an
/// infinite-index subgroup `B1`.
pub fn absorbing_pair(a: &Subgroup, b: &Subgroup) -> Result<(AbsorbingPair, StageLog), ConstructionError> {
    absorbing_pair_within(a, b, &Limits::default())
}

/// [`absorbing_pair`] with explicit caps on intermediate graphs.
pub fn absorbing_pair_within(
    a: &Subgroup,
    b: &Subgroup,
    limits: &Limits,
) -> Result<(AbsorbingPair, StageLog), ConstructionError> {
    same_alphabet(&[a, b])?;
    require_infinite(a, "A")?;
    require_infinite(b, "B")?;
    let mut log = StageLog::new();

    if a.is_trivial() {
        let pair = AbsorbingPair { a1: a.clone(), b0: b.clone(), b1: b.clone() };
        log.push(final_step(a, b, &pair)?);
        return Ok((pair, log));
    }

    let emb = free_factor_embedding(a)?;
    let e = emb.ambient().clone();
    let mut step = Step::new("free-factor-embedding");
    step.input("A", a).output("E", &e);
    step.certify(Check::Index { subgroup: "E".into() }, Expect::Finite);
    step.certify(Check::RelativeIndex { outer: "E".into(), inner: "A".into() }, Expect::Contained);
    ensure(&step)?;
    log.push(step);

    let b_e = intersect_within(b, &e, limits, "restrict-to-embedding")?;
    let mut step = Step::new("restrict-to-embedding");
    step.input("B", b).input("E", &e).output("B'", &b_e);
    step.certify(Check::RelativeIndex { outer: "B".into(), inner: "B'".into() }, Expect::Finite);
    ensure(&step)?;
    log.push(step);

    let r = &emb.rebasing;
    let y = &emb.factor;
    let factor = emb.factor_subgroup();
    let b_inner = r.rewrite(&b_e).expect("B' lies in E");

    let pair = if b_inner.core().edges().all(|(_, l, _)| y.contains_letter(l)) {
        AbsorbingPair { a1: a.clone(), b0: b_e, b1: a.clone() }
    } else {
        limits.check("cover-surgery", 2 * b_inner.core().vertex_count())?;
        let (cover, cover_log) = cover_with_outside_deficit(&b_inner, y, 2)?;
        log.append(cover_log);
        let k = cover.subgroup;
        // saturation makes every frame vertex full for Y
        let frame_size = frame_of(k.core(), y).vertices.len();
        limits.check("frame-saturation", frame_size.saturating_mul(y.len()))?;
        let saturated = saturate_frame(k.core(), y);
        let b1_inner: Subgroup = CoreGraph::validate(&saturated).expect("edges added inside a core").into();
        let a1_inner = intersect_within(&factor, &b1_inner, limits, "frame-saturation")?;

        let mut step = Step::new("frame-saturation");
        step.input("K", &k).input("F(Y)", &factor).output("B1", &b1_inner).output("A1", &a1_inner);
        step.certify(Check::RelativeIndex { outer: "B1".into(), inner: "K".into() }, Expect::Contained);
        step.certify(Check::RelativeIndex { outer: "F(Y)".into(), inner: "A1".into() }, Expect::Finite);
        step.certify(Check::Index { subgroup: "B1".into() }, Expect::Infinite);
        ensure(&step)?;
        log.push(step);

        let step = "absorbing-pair";
        AbsorbingPair {
            a1: r.expand_within(&a1_inner, limits, step)?,
            b0: r.expand_within(&k, limits, step)?,
            b1: r.expand_within(&b1_inner, limits, step)?,
        }
    };
    log.push(final_step(a, b, &pair)?);
    Ok((pair, log))
}

fn final_step(a: &Subgroup, b: &Subgroup, pair: &AbsorbingPair) -> Result<Step, ConstructionError> {
    let mut step = Step::new("absorbing-pair");
    step.input("A", a).input("B", b).output("A1", &pair.a1).output("B0", &pair.b0).output("B1", &pair.b1);
    let rel = |outer: &str, inner: &str| Check::RelativeIndex { outer: outer.into(), inner: inner.into() };
    step.certify(rel("A", "A1"), Expect::Finite);
    step.certify(rel("B", "B0"), Expect::Finite);
    step.certify(rel("B1", "B0"), Expect::Contained);
    step.certify(rel("B1", "A1"), Expect::Contained);
    step.certify(Check::Index { subgroup: "B1".into() }, Expect::Infinite);
    ensure(&step)?;
    Ok(step)
}
