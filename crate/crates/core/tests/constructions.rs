mod common;

use common::*;
use fgsub::constructions::*;
use fgsub::{GeneratorSet, Index, Subgroup, Word};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0usize..4, 0..=max)
        .prop_map(|v| Word::reduce(v.into_iter().map(fgsub::Letter::from_index)))
}

fn gens() -> impl Strategy<Value = Vec<Word>> {
    prop::collection::vec(word(4), 1..=2)
}

fn reduced_rank(h: &Subgroup) -> usize {
    h.rank().saturating_sub(1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn intersection_and_join_membership(ga in gens(), gb in gens()) {
        let a = xy();
        let (ha, hb) = (Subgroup::from_generators(&a, &ga), Subgroup::from_generators(&a, &gb));
        let meet = intersect(&ha, &hb);
        let both = [ga.clone(), gb.clone()].concat();
        let joined = closure_ball(&both, 6);
        let j = join(&ha, &hb);
        for g in all_words(&a, 6) {
            prop_assert_eq!(meet.contains(&g), ha.contains(&g) && hb.contains(&g));
            prop_assert_eq!(j.contains(&g), joined.contains(g.letters()));
        }
        prop_assert!(reduced_rank(&meet) <= reduced_rank(&ha) * reduced_rank(&hb));
    }

    #[test]
    fn relative_index_multiplies(gh in gens()) {
        let a = xy();
        let h = Subgroup::from_generators(&a, &gh);
        let m = hall_completion(&h, &[]).unwrap();
        let Index::Finite(n) = m.index() else { panic!("completion has finite index") };
        prop_assert!(m.contains_subgroup(&h));
        let k = intersect(&m, &sub(&["xx", "y", "xyX"]));
        let Index::Finite(nk) = k.index() else { panic!() };
        prop_assert_eq!(relative_index(&m, &k), RelativeIndex::Finite(nk / n));
        let t = transversal(&m, &k).unwrap();
        prop_assert_eq!(t.len(), nk / n);
        prop_assert!(t[0].is_empty());
        // left cosets t·K are pairwise distinct and inside M
        for (i, u) in t.iter().enumerate() {
            prop_assert!(m.contains(u));
            for v in &t[i + 1..] {
                prop_assert!(!k.contains(&u.inverse().concat(v)));
            }
        }
    }
}

#[test]
fn relative_index_against_coset_count() {
    let k = sub(&["x", "yxY", "yy"]);
    assert_eq!(coset_count(&xy(), &[w("x"), w("yxY"), w("yy")], 4), 2);
    assert_eq!(relative_index(&Subgroup::full(&xy()), &k), RelativeIndex::Finite(2));
    assert_eq!(relative_index(&sub(&["x", "y"]), &sub(&["x"])), RelativeIndex::Infinite);
    assert_eq!(relative_index(&sub(&["x"]), &sub(&["y"])), RelativeIndex::NotSubgroup);
    assert_eq!(relative_index(&sub(&["x"]), &sub(&["xxx"])), RelativeIndex::Finite(3));
}

#[test]
fn hall_avoids_excluded_words() {
    let a = xy();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..40 {
        let (gens, h) = random_infinite(&mut rng, &a, 2, 5);
        let exclude: Vec<Word> = (0..3).map(|_| random_word(&mut rng, &a, 4)).filter(|s| !h.contains(s)).collect();
        let m = hall_completion(&h, &exclude).unwrap();
        assert!(m.index().is_finite());
        assert!(m.contains_subgroup(&h), "{}", show(&a, &gens));
        assert!(exclude.iter().all(|s| !m.contains(s)));
    }
    assert!(matches!(
        hall_completion(&sub(&["x"]), &[w("xx")]),
        Err(ConstructionError::ExcludedMember { .. })
    ));
}

#[test]
fn covers_have_the_promised_index() {
    let a = xy();
    let y = GeneratorSet::parse(&a, "y").unwrap();
    for (h, sheets) in [(sub(&["x", "yxY"]), 2), (sub(&["xyxyX", "xyxxxYX", "xyXYxyxYX"]), 3), (sub(&["xy"]), 3)] {
        let (cover, log) = cover_with_outside_deficit(&h, &y, sheets).unwrap();
        let expect = match cover.branch {
            CoverBranch::Bridge { .. } => 1,
            CoverBranch::Cyclic { sheets, .. } => sheets,
        };
        assert_eq!(relative_index(&h, &cover.subgroup), RelativeIndex::Finite(expect));
        assert!(deficit_outside_frame(&cover.subgroup, &y).is_some());
        assert!(log.reverify().is_ok());
    }
    assert!(matches!(cover_with_outside_deficit(&sub(&["y"]), &y, 2), Err(ConstructionError::InsideFactor { .. })));
    assert!(matches!(cover_with_outside_deficit(&sub(&["x"]), &y, 1), Err(ConstructionError::SheetCount(1))));
}

#[test]
fn pair_and_envelope_on_small_inputs() {
    for (a, b) in [(sub(&["x"]), sub(&["y"])), (sub(&["xy"]), sub(&["x", "yxY"])), (sub(&["xyX"]), sub(&["xx", "y"]))] {
        let (pair, log) = absorbing_pair(&a, &b).unwrap();
        assert!(relative_index(&a, &pair.a1).is_finite());
        assert!(relative_index(&b, &pair.b0).is_finite());
        assert!(pair.b1.contains_subgroup(&pair.a1) && pair.b1.contains_subgroup(&pair.b0));
        assert_eq!(pair.b1.index(), Index::Infinite);
        assert!(log.reverify().is_ok());

        let (env, log) = normalized_envelope(&a, &b).unwrap();
        assert_eq!(env.b2.index(), Index::Infinite);
        assert!(relative_index(&b, &env.h).is_finite());
        assert!(env.b2.contains_subgroup(&env.h));
        for g in a.basis() {
            for v in env.b2.basis() {
                assert!(env.b2.contains(&v.conjugate_by(&g)));
                assert!(env.b2.contains(&v.conjugate_by(&g.inverse())));
            }
        }
        assert!(log.all_ok() && log.reverify().is_ok());
    }
}

#[test]
fn family_join_is_infinite() {
    let hs = [sub(&["x"]), sub(&["y"]), sub(&["xy"])];
    let (fam, log) = infinite_index_family(&hs).unwrap();
    assert_eq!(fam.join.index(), Index::Infinite);
    for (m, h) in fam.members.iter().zip(&hs) {
        assert!(relative_index(h, m).is_finite());
        assert!(fam.join.contains_subgroup(m));
    }
    assert!(log.reverify().is_ok());
}

#[test]
fn shrink_on_random_inputs() {
    let a = xy();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut done = 0;
    while done < 8 {
        let (_, ha) = random_infinite(&mut rng, &a, 2, 3);
        let (_, hb) = random_infinite(&mut rng, &a, 2, 3);
        let s: Vec<Word> = std::iter::once(random_word(&mut rng, &a, 2)).filter(|s| !ha.contains(s)).collect();
        match shrink_for_infinite_join_within(&ha, &hb, &s, &Limits::new(200_000)) {
            Ok((h, log)) => {
                assert!(relative_index(&hb, &h).is_finite());
                let j = join(&ha, &h);
                assert_eq!(j.index(), Index::Infinite);
                assert!(s.iter().all(|s| !j.contains(s)));
                let text = log.to_string();
                assert!(StageLog::parse(&text).unwrap().reverify().is_ok());
                done += 1;
            }
            Err(ConstructionError::ResourceLimit { .. }) => {}
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn small_cancellation_witnesses() {
    let a = xy();
    for rel in ["x", "xyXY", "yyx"] {
        let wit = supplement_witness(&a, &w(rel)).unwrap();
        assert!(wit.all_ok(), "{rel}: {:?}", wit.checks);
        assert_eq!(Subgroup::from_generators(&a, &wit.v_words), wit.subgroup);
    }
    assert!(matches!(supplement_witness(&a, &Word::empty()), Err(ConstructionError::TrivialRelator)));
}
