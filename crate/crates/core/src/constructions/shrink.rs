use crate::stallings::Subgroup;
use crate::words::Word;

use super::envelope::normalized_envelope_within;
use super::hall::hall_completion;
use super::log::{Check, Expect, StageLog, Step};
use super::product::{intersect_within, join};
use super::{ensure, require_infinite, same_alphabet, ConstructionError, Limits};

/// A finite-index subgroup `H ≤ B` such that `⟨A, H⟩` has infinite index in
/// `F` and contains none of the excluded words (which must lie outside `A`).
pub fn shrink_for_infinite_join(
    a: &Subgroup,
    b: &Subgroup,
    exclude: &[Word],
) -> Result<(Subgroup, StageLog), ConstructionError> {
    shrink_for_infinite_join_within(a, b, exclude, &Limits::default())
}

/// [`shrink_for_infinite_join`] with explicit caps on intermediate graphs.
pub fn shrink_for_infinite_join_within(
    a: &Subgroup,
    b: &Subgroup,
    exclude: &[Word],
    limits: &Limits,
) -> Result<(Subgroup, StageLog), ConstructionError> {
    same_alphabet(&[a, b])?;
    if let Some(s) = exclude.iter().find(|s| a.contains(s)) {
        return Err(ConstructionError::ExcludedMember { word: a.alphabet().format_word(s) });
    }
    require_infinite(a, "A")?;
    require_infinite(b, "B")?;
    let mut log = StageLog::new();

    let mut envelope = None;
    let h0 = if b.is_trivial() || a.is_trivial() {
        b.clone()
    } else {
        let (env, env_log) = normalized_envelope_within(a, b, limits)?;
        log.append(env_log);
        let h0 = env.h.clone();
        envelope = Some(env.b2);
        h0
    };

    let h = if exclude.is_empty() || b.is_trivial() {
        h0
    } else {
        let m = hall_completion(a, exclude)?;
        let mut step = Step::new("exclusion-completion");
        step.input("A", a).output("M", &m);
        step.certify(Check::Index { subgroup: "M".into() }, Expect::Finite);
        step.certify(Check::RelativeIndex { outer: "M".into(), inner: "A".into() }, Expect::Contained);
        for s in exclude {
            step.certify(Check::Member { subgroup: "M".into(), word: s.clone() }, Expect::No);
        }
        ensure(&step)?;
        log.push(step);
        intersect_within(&h0, &m, limits, "exclusion-completion")?
    };

    let j = join(a, &h);
    let mut step = Step::new("shrink-for-infinite-join");
    step.input("A", a).input("B", b).output("H", &h).output("J", &j);
    step.certify(Check::RelativeIndex { outer: "B".into(), inner: "H".into() }, Expect::Finite);
    step.certify(Check::Index { subgroup: "J".into() }, Expect::Infinite);
    for s in exclude {
        step.certify(Check::Member { subgroup: "J".into(), word: s.clone() }, Expect::No);
    }
    if let Some(b2) = &envelope {
        let ab2 = join(a, b2);
        step.input("B2", b2).output("AB2", &ab2);
        step.certify(Check::RelativeIndex { outer: "AB2".into(), inner: "B2".into() }, Expect::Finite);
    }
    ensure(&step)?;
    log.push(step);
    Ok((h, log))
}
