mod common;

use common::*;
use fgsub::stallings::GraphBuilder;
use fgsub::{Index, Subgroup, Word};
use proptest::prelude::*;
use rand::{seq::SliceRandom, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn word_strategy(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0usize..4, 0..=max)
        .prop_map(|v| Word::reduce(v.into_iter().map(fgsub::Letter::from_index)))
}

fn gens_strategy() -> impl Strategy<Value = Vec<Word>> {
    prop::collection::vec(word_strategy(5), 1..=3)
}

#[test]
fn membership_agrees_with_closure() {
    let a = xy();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let words = all_words(&a, 8);
    for _ in 0..25 {
        let gens = random_generators(&mut rng, &a, 3, 5);
        let h = Subgroup::from_generators(&a, &gens);
        let members = closure_ball(&gens, 8);
        for g in &words {
            assert_eq!(h.contains(g), members.contains(g.letters()), "{} in {}", a.format_word(g), show(&a, &gens));
        }
    }
}

#[test]
fn index_agrees_with_coset_count() {
    let a = xy();
    for (gens, expect) in [
        (vec!["x", "y"], 1),
        (vec!["x", "yxY", "yy"], 2),
        (vec!["xx", "y", "xyX"], 2),
        (vec!["xxx", "y", "xyX", "xxyXX"], 3),
    ] {
        let words: Vec<Word> = gens.iter().map(|g| w(g)).collect();
        let h = Subgroup::from_generators(&a, &words);
        assert_eq!(h.index(), Index::Finite(expect));
        assert_eq!(coset_count(&a, &words, 4), expect);
    }
    assert_eq!(sub(&["x"]).index(), Index::Infinite);
    // infinitely many cosets: the count keeps growing with the radius
    assert!(coset_count(&a, &[w("x")], 3) < coset_count(&a, &[w("x")], 4));
}

#[test]
fn handle_example_core() {
    let h = sub(&["xyxyX", "xyxxxYX", "xyXYxyxYX"]);
    let g = h.core().as_regular();
    assert_eq!(g.vertex_count(), 6);
    assert_eq!(g.edge_count(), 8);
    assert_eq!(h.rank(), 3);
    assert_eq!(g.degree(g.base()), 1);
    assert_eq!(h.handle().label, w("x"));
    assert!(!h.deficits(&fgsub::GeneratorSet::all(&xy())).is_empty());
    assert_eq!(h.index(), Index::Infinite);
}

#[test]
fn fold_orders_agree() {
    let a = xy();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let gens = random_generators(&mut rng, &a, 4, 6);
        let mut b = GraphBuilder::new(a.clone());
        for g in &gens {
            b.add_loop(g);
        }
        let mut order: Vec<usize> = (0..b.edges().len()).collect();
        let forward = b.fold_in_order(&order).0.canonical();
        order.shuffle(&mut rng);
        let (shuffled, map) = b.fold_in_order(&order);
        assert_eq!(shuffled.base(), map[b.base()]);
        assert_eq!(forward, shuffled.canonical());
    }
}

proptest! {
    #[test]
    fn serialization_round_trip(gens in gens_strategy()) {
        let a = xy();
        let h = Subgroup::from_generators(&a, &gens);
        let back = Subgroup::deserialize(&h.serialize()).unwrap();
        prop_assert_eq!(&back, &h);
        prop_assert_eq!(back.serialize(), h.serialize());
    }

    #[test]
    fn generators_are_members(gens in gens_strategy(), extra in word_strategy(6)) {
        let a = xy();
        let h = Subgroup::from_generators(&a, &gens);
        for g in &gens {
            prop_assert!(h.contains(g));
            prop_assert!(h.contains(&g.inverse()));
        }
        let p = gens.iter().fold(Word::empty(), |acc, g| acc.concat(g));
        prop_assert!(h.contains(&p));
        if let Some(path) = h.membership_path(&extra) {
            prop_assert!(h.contains(&extra));
            prop_assert_eq!(path.len(), extra.len() + 1);
        }
    }

    #[test]
    fn basis_generates_the_same_subgroup(gens in gens_strategy()) {
        let a = xy();
        let h = Subgroup::from_generators(&a, &gens);
        let basis = h.basis();
        prop_assert_eq!(basis.len(), h.rank());
        prop_assert_eq!(&Subgroup::from_generators(&a, &basis), &h);
        for g in &gens {
            let spelled = h.express(g).unwrap();
            prop_assert_eq!(spelled.substitute(&basis), g.clone());
        }
    }

    #[test]
    fn conjugation_moves_membership(gens in gens_strategy(), g in word_strategy(4), u in word_strategy(6)) {
        let a = xy();
        let h = Subgroup::from_generators(&a, &gens);
        let hg = h.conjugate(&g);
        prop_assert_eq!(hg.contains(&u.conjugate_by(&g)), h.contains(&u));
        prop_assert_eq!(hg.rank(), h.rank());
        prop_assert_eq!(hg.index(), h.index());
    }

    #[test]
    fn handle_removal_conjugates(gens in gens_strategy()) {
        let a = xy();
        let h = Subgroup::from_generators(&a, &gens);
        let (p, k) = h.without_handle();
        prop_assert_eq!(p.len(), h.handle().len());
        prop_assert_eq!(&k, &h.conjugate(&p.inverse()));
        prop_assert_eq!(k.rank(), h.rank());
    }
}
