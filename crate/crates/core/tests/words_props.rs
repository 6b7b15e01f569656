mod common;

use common::*;
use fgsub::{Alphabet, Letter, Word};
use proptest::prelude::*;

fn raw(max: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec((0usize..4).prop_map(Letter::from_index), 0..=max)
}

fn word(max: usize) -> impl Strategy<Value = Word> {
    raw(max).prop_map(Word::reduce)
}

proptest! {
    #[test]
    fn reduce_matches_rescanning(v in raw(40)) {
        prop_assert_eq!(Word::reduce(v.clone()).letters().to_vec(), naive_reduce(&v));
    }

    #[test]
    fn reduce_is_idempotent(v in raw(30)) {
        let once = Word::reduce(v);
        prop_assert_eq!(Word::reduce(once.letters().to_vec()), once.clone());
        prop_assert!(once.letters().windows(2).all(|p| p[1] != p[0].inverse()));
    }

    #[test]
    fn inverse_identities(u in word(12), v in word(12)) {
        prop_assert!(u.concat(&u.inverse()).is_empty());
        prop_assert_eq!(u.inverse().inverse(), u.clone());
        prop_assert_eq!(u.concat(&v).inverse(), v.inverse().concat(&u.inverse()));
        prop_assert!(u.concat(&v).len() <= u.len() + v.len());
        prop_assert_eq!((u.concat(&v).len() + u.len() + v.len()) % 2, 0);
    }

    #[test]
    fn powers(u in word(6), m in -4i64..4, n in -4i64..4) {
        prop_assert_eq!(u.pow(m).concat(&u.pow(n)), u.pow(m + n));
        prop_assert_eq!(u.pow(-m), u.pow(m).inverse());
    }

    #[test]
    fn compact_round_trip(u in word(20)) {
        let a = xy();
        prop_assert_eq!(a.parse_word(&a.format_word(&u)).unwrap(), u);
    }

    #[test]
    fn token_round_trip(v in prop::collection::vec((0usize..6).prop_map(Letter::from_index), 0..15)) {
        let a: Alphabet = "a1,a2,b".parse().unwrap();
        let u = Word::reduce(v);
        prop_assert_eq!(a.parse_word(&a.format_word(&u)).unwrap(), u);
    }
}

#[test]
fn parse_errors_point_at_the_culprit() {
    let a = xy();
    let err = a.parse_word("xyqx").unwrap_err().to_string();
    assert!(err.contains('q') && err.contains('2'), "{err}");
    assert_eq!(a.parse_word("x^3 y^-2").unwrap(), w("xxxYY"));
    assert_eq!(a.parse_word("xX").unwrap(), Word::empty());
    assert_eq!(a.parse_word("1").unwrap(), Word::empty());
}
