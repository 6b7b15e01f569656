use crate::stallings::Subgroup;

use super::log::{Check, Expect, StageLog, Step};
use super::pair::absorbing_pair_within;
use super::product::{intersect_within, join_all};
use super::{ensure, require_infinite, same_alphabet, ConstructionError, Limits};

/// Finite-index shrinks `H'i ≤ Hi` whose join `J` has infinite index.
#[derive(Clone, Debug)]
pub struct Family {
    pub members: Vec<Subgroup>,
    pub join: Subgroup,
}

/// Adds one subgroup at a time. If the next subgroup already has an
/// infinite-index join with the current one it is taken as is; otherwise an
/// absorbing pair for the current join and the next subgroup shrinks the
/// earlier members into the pair's `A1` and contributes its `B0`.
pub fn infinite_index_family(hs: &[Subgroup]) -> Result<(Family, StageLog), ConstructionError> {
    infinite_index_family_within(hs, &Limits::default())
}

/// [`infinite_index_family`] with explicit caps on intermediate graphs.
pub fn infinite_index_family_within(hs: &[Subgroup], limits: &Limits) -> Result<(Family, StageLog), ConstructionError> {
    let (first, rest) = hs.split_first().ok_or(ConstructionError::EmptyFamily)?;
    same_alphabet(&hs.iter().collect::<Vec<_>>())?;
    for (i, h) in hs.iter().enumerate() {
        require_infinite(h, &format!("subgroup {}", i + 1))?;
    }
    let mut log = StageLog::new();
    let mut members = vec![first.clone()];
    let mut join = first.clone();
    for h in rest {
        let direct = join_all([&join, h]);
        if !direct.index().is_finite() {
            members.push(h.clone());
            join = direct;
            continue;
        }
        let (pair, pair_log) = absorbing_pair_within(&join, h, limits)?;
        log.append(pair_log);
        for m in &mut members {
            *m = intersect_within(m, &pair.a1, limits, "infinite-index-family")?;
        }
        members.push(pair.b0);
        join = join_all(&members);
    }

    let mut step = Step::new("infinite-index-family");
    step.output("J", &join);
    step.certify(Check::Index { subgroup: "J".into() }, Expect::Infinite);
    for (i, (h, m)) in hs.iter().zip(&members).enumerate() {
        let (hn, mn) = (format!("H{}", i + 1), format!("H{}'", i + 1));
        step.input(&hn, h).output(&mn, m);
        step.certify(Check::RelativeIndex { outer: hn, inner: mn.clone() }, Expect::Finite);
        step.certify(Check::RelativeIndex { outer: "J".into(), inner: mn }, Expect::Contained);
    }
    ensure(&step)?;
    log.push(step);
    Ok((Family { members, join }, log))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::relative_index;
    use crate::words::{Alphabet, Word};

    fn sub(gens: &[&str]) -> Subgroup {
        let a: Alphabet = "x,y".parse().unwrap();
        let words: Vec<Word> = gens.iter().map(|g| a.parse_word(g).unwrap()).collect();
        Subgroup::from_generators(&a, &words)
    }

    fn check(hs: &[Subgroup]) {
        let (fam, log) = infinite_index_family(hs).unwrap();
        assert!(!fam.join.index().is_finite());
        for (h, m) in hs.iter().zip(&fam.members) {
            assert!(relative_index(h, m).is_finite());
            assert!(fam.join.contains_subgroup(m));
        }
        log.reverify().unwrap();
    }

    #[test]
    fn single_member_is_unchanged() {
        let h = sub(&["xyX"]);
        let (fam, _) = infinite_index_family(&[h.clone()]).unwrap();
        assert_eq!((fam.members, fam.join), (vec![h.clone()], h));
    }

    #[test]
    fn pairs_and_triples() {
        check(&[sub(&["x"]), sub(&["y"])]);
        check(&[sub(&["x"]), sub(&["y"]), sub(&["xy"])]);
    }

    #[test]
    fn rejects_finite_index_member() {
        assert!(matches!(
            infinite_index_family(&[sub(&["x"]), sub(&["x", "y"])]),
            Err(ConstructionError::FiniteIndex { .. })
        ));
        assert_eq!(infinite_index_family(&[]).unwrap_err(), ConstructionError::EmptyFamily);
    }
}
