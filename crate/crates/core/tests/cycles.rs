mod common;

use common::{all_words, rng};
use hkmon::{is_formp, Digraph, GenOrder, RuleKind, RuleSystem, Word};
use proptest::prelude::*;
use rand::Rng;

fn systems(n: usize) -> (RuleSystem, RuleSystem, RuleSystem) {
    let g = Digraph::cycle(n).unwrap();
    (
        RuleSystem::t(&g),
        RuleSystem::s(n).unwrap(),
        RuleSystem::s_prime(n).unwrap(),
    )
}

#[test]
fn three_systems_agree_on_short_words() {
    for (n, len) in [(3, 7), (4, 6), (5, 5), (6, 5)] {
        let (t, s, sp) = systems(n);
        for u in all_words(n, len) {
            let nf = t.normal_form(&u);
            assert_eq!(s.normal_form(&u), nf, "S, n={n}, {u}");
            assert_eq!(sp.normal_form(&u), nf, "S', n={n}, {u}");
            let r = t.is_reduced(&u);
            assert_eq!(s.is_reduced(&u), r, "S reduced, n={n}, {u}");
            assert_eq!(sp.is_reduced(&u), r, "S' reduced, n={n}, {u}");
        }
    }
}

#[test]
fn three_systems_agree_on_random_long_words() {
    let mut r = rng(5);
    for n in 3..=7 {
        let (t, s, sp) = systems(n);
        for _ in 0..400 {
            let len = r.gen_range(0..=16);
            let u = Word::new((0..len).map(|_| r.gen_range(1..=n as u8)).collect());
            let nf = t.normal_form(&u);
            assert_eq!(s.normal_form(&u), nf, "n={n}, {u}");
            assert_eq!(sp.normal_form(&u), nf, "n={n}, {u}");
        }
    }
}

#[test]
fn s_prime_is_locally_confluent() {
    for n in 3..=6 {
        let len = if n <= 5 { 7 } else { 6 };
        let report = RuleSystem::s_prime(n)
            .unwrap()
            .check_local_confluence(len, u128::MAX)
            .unwrap();
        assert!(report.ok(), "n={n}: {:?}", report.counterexamples.first());
    }
}

#[test]
fn words_avoiding_the_short_families_have_block_form() {
    let kinds = [
        RuleKind::S1,
        RuleKind::S2,
        RuleKind::S3,
        RuleKind::S4Prime,
        RuleKind::S5Prime,
    ];
    for n in 3..=6 {
        let g = Digraph::cycle(n).unwrap();
        let sys = RuleSystem::with_kinds(&g, GenOrder::identity(n), &kinds).unwrap();
        for u in all_words(n - 1, 7) {
            if sys.is_reduced(&u) {
                assert!(is_formp(u.letters(), n).unwrap(), "n={n}, {u}");
            }
        }
    }
}

fn cycle_word() -> impl Strategy<Value = (usize, Word)> {
    (3usize..=7).prop_flat_map(|n| {
        (
            Just(n),
            prop::collection::vec(1..=n as u8, 0..14).prop_map(Word::new),
        )
    })
}

proptest! {
    #[test]
    fn s_prime_matches_are_s_matches((n, u) in cycle_word()) {
        let s = RuleSystem::s(n).unwrap();
        let sp = RuleSystem::s_prime(n).unwrap();
        let s_spans: Vec<(usize, usize, Word)> = s
            .find_matches(&u)
            .into_iter()
            .map(|m| (m.start, m.end, m.replacement))
            .collect();
        for m in sp.find_matches(&u) {
            prop_assert!(s_spans.contains(&(m.start, m.end, m.replacement.clone())), "{:?}", m);
        }
    }

    #[test]
    fn s_leading_terms_are_not_t_reduced((n, u) in cycle_word()) {
        let s = RuleSystem::s(n).unwrap();
        let t = RuleSystem::t(&Digraph::cycle(n).unwrap());
        if !s.is_reduced(&u) {
            prop_assert!(!t.is_reduced(&u));
        }
    }
}
