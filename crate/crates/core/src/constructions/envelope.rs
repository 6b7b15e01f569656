use std::collections::{HashSet, VecDeque};

use crate::stallings::Subgroup;
use crate::words::Word;

use super::family::infinite_index_family_within;
use super::log::{Check, Expect, StageLog, Step};
use super::pair::absorbing_pair_within;
use super::product::{intersect_within, join, join_all, relative_index, transversal, RelativeIndex};
use super::{ensure, require_infinite, same_alphabet, ConstructionError, Limits};

/// The largest subgroup of `Q` normal in `B1`: the intersection of the
/// conjugates of `Q` by elements of `B1`.
pub fn normal_core_in(q: &Subgroup, b1: &Subgroup) -> Result<Subgroup, ConstructionError> {
    match relative_index(b1, q) {
        RelativeIndex::NotSubgroup => {
            return Err(ConstructionError::NotContained { inner: "Q".into(), outer: "B1".into() })
        }
        RelativeIndex::Infinite => {
            return Err(ConstructionError::InfiniteRelativeIndex { inner: "Q".into(), outer: "B1".into() })
        }
        RelativeIndex::Finite(_) => {}
    }
    core_under(q, b1, &Limits::default())
}

/// Intersection of all conjugates `h Q h⁻¹`, `h ∈ by`.
pub(crate) fn core_under(q: &Subgroup, by: &Subgroup, limits: &Limits) -> Result<Subgroup, ConstructionError> {
    let orbit = conjugation_orbit(q, by, limits, "normal-core")?;
    let mut core = q.clone();
    for d in &orbit[1..] {
        core = intersect_within(&core, d, limits, "normal-core")?;
    }
    Ok(core)
}

/// The conjugates `h Q h⁻¹`, `h ∈ by`, starting with `Q`, explored through
/// the basis of `by`. The orbit must be finite, which holds when `by` lies
/// in a subgroup containing `Q` with finite index, or in a finite union of
/// cosets of one.
fn conjugation_orbit(
    q: &Subgroup,
    by: &Subgroup,
    limits: &Limits,
    step: &str,
) -> Result<Vec<Subgroup>, ConstructionError> {
    let moves: Vec<Word> = by.basis().iter().flat_map(|g| [g.clone(), g.inverse()]).collect();
    let mut seen: HashSet<Subgroup> = HashSet::from([q.clone()]);
    let mut orbit = vec![q.clone()];
    let mut queue = VecDeque::from([q.clone()]);
    let mut total = q.core().vertex_count();
    while let Some(c) = queue.pop_front() {
        for g in &moves {
            let d = c.conjugate(g);
            if seen.insert(d.clone()) {
                total += d.core().vertex_count();
                limits.check(step, total)?;
                orbit.push(d.clone());
                queue.push_back(d);
            }
        }
    }
    Ok(orbit)
}

/// `B2` of infinite index in `F` and normalized by `A`, together with a
/// finite-index subgroup `H` of `B` inside `B2`.
#[derive(Clone, Debug)]
pub struct Envelope {
    pub b2: Subgroup,
    pub h: Subgroup,
}

/// If `⟨A, B⟩` already has infinite index it is returned with `H = B`.
/// Otherwise, starting from an absorbing pair `(A1, B0, B1)` and a transversal `a_i` of
/// `A1` in `A`, builds an infinite-index family over the conjugates
/// `a_i B1 a_i⁻¹`, pulls the shrunk members back into `B1`, replaces their
/// intersection by the largest subgroup `Q` of it normalized by `A1`, and
/// joins the conjugates `a_i Q a_i⁻¹`. For `a ∈ A` write `a·a_i = a_j·h`
/// with `h ∈ A1`; then `a (a_i Q a_i⁻¹) a⁻¹ = a_j Q a_j⁻¹`, so `A` permutes
/// the conjugates and normalizes `B2`. (Normality of `Q` in all of `B1` is
/// not needed and can cost an index of order `[B1:Q]!`.)
///
/// Before taking that core, the join of the whole `A`-conjugation orbit of
/// the intersection is tried: it is normalized by `A` by construction, and
/// if it has infinite index it already serves as `B2`.
pub fn normalized_envelope(a: &Subgroup, b: &Subgroup) -> Result<(Envelope, StageLog), ConstructionError> {
    normalized_envelope_within(a, b, &Limits::default())
}

/// [`normalized_envelope`] with explicit caps on intermediate graphs.
pub fn normalized_envelope_within(
    a: &Subgroup,
    b: &Subgroup,
    limits: &Limits,
) -> Result<(Envelope, StageLog), ConstructionError> {
    same_alphabet(&[a, b])?;
    require_infinite(a, "A")?;
    require_infinite(b, "B")?;
    if b.is_trivial() {
        return Err(ConstructionError::Trivial { which: "B".into() });
    }
    let direct = join(a, b);
    if !direct.index().is_finite() {
        // ⟨A, B⟩ contains A, so A normalizes it
        let env = Envelope { b2: direct, h: b.clone() };
        let mut log = StageLog::new();
        log.push(envelope_step(a, b, &env)?);
        return Ok((env, log));
    }
    let (pair, mut log) = absorbing_pair_within(a, b, limits)?;
    let reps: Vec<Word> = transversal(a, &pair.a1)?;

    let conjugates: Vec<Subgroup> = reps.iter().map(|t| pair.b1.conjugate(t)).collect();
    let (family, family_log) = infinite_index_family_within(&conjugates, limits)?;
    log.append(family_log);

    let mut q = family.members[0].clone();
    for (t, m) in reps.iter().zip(&family.members).skip(1) {
        q = intersect_within(&q, &m.conjugate(&t.inverse()), limits, "normal-core")?;
    }
    let q_before = q.clone();

    // Cheap candidate first: the join of all A-conjugates of Q0 is
    // normalized by A and contains `B ∩ Q0`; only its index is in doubt.
    // A blown cap here is not fatal: the fallback below may still fit.
    let candidate = conjugation_orbit(&q_before, a, limits, "orbit-join").ok().map(|orbit| join_all(&orbit));
    if let Some(candidate) = candidate.filter(|c| !c.index().is_finite()) {
        let mut step = Step::new("orbit-join");
        step.input("A", a).input("Q0", &q_before).output("B2", &candidate);
        step.certify(Check::Index { subgroup: "B2".into() }, Expect::Infinite);
        step.certify(Check::RelativeIndex { outer: "B2".into(), inner: "Q0".into() }, Expect::Contained);
        ensure(&step)?;
        log.push(step);
        let h = intersect_within(b, &q_before, limits, "normalized-envelope")?;
        let env = Envelope { b2: candidate, h };
        log.push(envelope_step(a, b, &env)?);
        return Ok((env, log));
    }

    let q = core_under(&q_before, &pair.a1, limits)?;

    let mut step = Step::new("normal-core");
    step.input("B1", &pair.b1).input("A1", &pair.a1).input("Q0", &q_before).output("Q", &q);
    step.certify(Check::RelativeIndex { outer: "B1".into(), inner: "Q".into() }, Expect::Finite);
    step.certify(Check::RelativeIndex { outer: "Q0".into(), inner: "Q".into() }, Expect::Contained);
    step.certify(Check::Normalizes { by: "A1".into(), subgroup: "Q".into() }, Expect::Yes);
    ensure(&step)?;
    log.push(step);

    let translates: Vec<Subgroup> = reps.iter().map(|t| q.conjugate(t)).collect();
    let b2 = join_all(&translates);
    let h = intersect_within(b, &q, limits, "normalized-envelope")?;
    let env = Envelope { b2, h };
    log.push(envelope_step(a, b, &env)?);
    Ok((env, log))
}

fn envelope_step(a: &Subgroup, b: &Subgroup, env: &Envelope) -> Result<Step, ConstructionError> {
    let mut step = Step::new("normalized-envelope");
    step.input("A", a).input("B", b).output("B2", &env.b2).output("H", &env.h);
    step.certify(Check::Index { subgroup: "B2".into() }, Expect::Infinite);
    step.certify(Check::RelativeIndex { outer: "B".into(), inner: "H".into() }, Expect::Finite);
    step.certify(Check::RelativeIndex { outer: "B2".into(), inner: "H".into() }, Expect::Contained);
    step.certify(Check::Normalizes { by: "A".into(), subgroup: "B2".into() }, Expect::Yes);
    ensure(&step)?;
    Ok(step)
}
