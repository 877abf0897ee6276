mod common;

use common::{all_words, random_graph, rng};
use hkmon::{congruence_closure, Digraph, GenOrder, Growth, NormalWordDfa, RuleSystem, Word};
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::Rng;

#[test]
fn automaton_accepts_exactly_the_reduced_words() {
    let mut r = rng(13);
    for _ in 0..40 {
        let n = r.gen_range(1..=5);
        let g = random_graph(&mut r, n);
        let dfa = NormalWordDfa::for_graph(&g, &GenOrder::identity(n));
        let t = RuleSystem::t(&g);
        let len = if n <= 3 { 7 } else { 5 };
        for u in all_words(n, len) {
            assert_eq!(
                dfa.accepts(u.letters()),
                t.is_reduced(&u),
                "graph {} word {u}",
                g.to_file_string()
            );
        }
    }
}

#[test]
fn automaton_respects_other_generator_orders() {
    let g = Digraph::cycle_with_tail();
    let ord = GenOrder::from_ascending(&[4, 2, 3, 1]).unwrap();
    let dfa = NormalWordDfa::for_graph(&g, &ord);
    let t = RuleSystem::t_with_order(&g, ord).unwrap();
    for u in all_words(4, 6) {
        assert_eq!(dfa.accepts(u.letters()), t.is_reduced(&u), "{u}");
    }
}

#[test]
fn growth_matches_the_graph_criterion_up_to_five_vertices() {
    for n in 1..=5 {
        for code in 0..Digraph::oriented_count(n) {
            let g = Digraph::from_code(n, code).unwrap();
            let growth = NormalWordDfa::for_graph(&g, &GenOrder::identity(n)).classify_growth();
            assert_eq!(
                growth == Growth::Exponential,
                g.has_two_connected_cycles(),
                "{}",
                g.to_file_string()
            );
            if g.is_acyclic() {
                assert_eq!(growth, Growth::Finite, "{}", g.to_file_string());
            }
        }
    }
}

#[test]
fn growth_matches_the_graph_criterion_on_random_six_vertex_graphs() {
    let mut r = rng(17);
    for _ in 0..200 {
        let g = random_graph(&mut r, 6);
        let growth = NormalWordDfa::for_graph(&g, &GenOrder::identity(6)).classify_growth();
        assert_eq!(
            growth == Growth::Exponential,
            g.has_two_connected_cycles(),
            "{}",
            g.to_file_string()
        );
    }
}

fn cumulative(c: &[BigUint]) -> Vec<BigUint> {
    let mut acc = BigUint::default();
    c.iter()
        .map(|x| {
            acc += x;
            acc.clone()
        })
        .collect()
}

// Checks the classification against the count sequence:
// finite languages die out, polynomial ones scale like L^gk when L is
// doubled, exponential ones gain at least 2^25 over the same stretch.
#[test]
fn classification_is_consistent_with_counts() {
    const L: usize = 100;
    for n in 1..=4 {
        for code in 0..Digraph::oriented_count(n) {
            let g = Digraph::from_code(n, code).unwrap();
            let dfa = NormalWordDfa::for_graph(&g, &GenOrder::identity(n));
            let c = dfa.count_normal_words(2 * L);
            let cum = cumulative(&c);
            let name = g.to_file_string();
            match dfa.classify_growth() {
                Growth::Finite => {
                    assert!(c[L..].iter().all(|x| *x == BigUint::default()), "{name}")
                }
                Growth::Polynomial { gk } => {
                    // cum(2L) / cum(L) tends to 2^gk.
                    let lo = &cum[L] << gk.saturating_sub(1);
                    let hi = &cum[L] << (gk + 1);
                    assert!(cum[2 * L] >= lo && cum[2 * L] <= hi, "{name}: gk={gk}");
                }
                Growth::Exponential => assert!(c[2 * L] >= &c[L] << 25, "{name}"),
            }
        }
    }
}

#[test]
fn accepted_words_biject_with_congruence_classes() {
    for g in [
        Digraph::cycle(3).unwrap(),
        Digraph::cycle(4).unwrap(),
        Digraph::path(4).unwrap(),
    ] {
        let n = g.n();
        let table = congruence_closure(&g, 5, 2, 10_000_000).unwrap();
        let dfa = NormalWordDfa::for_graph(&g, &GenOrder::identity(n));
        let counts: Vec<u64> = cumulative(&dfa.count_normal_words(5))
            .iter()
            .map(|x| u64::try_from(x).unwrap())
            .collect();
        assert_eq!(table.cumulative_class_counts(), counts);
    }
}

#[test]
fn counts_agree_with_enumeration() {
    let g = Digraph::cycle_with_tail();
    let dfa = NormalWordDfa::for_graph(&g, &GenOrder::identity(4));
    let words = dfa.enumerate_normal_words(8, 1_000_000).unwrap();
    let total: BigUint = dfa.count_normal_words(8).iter().sum();
    assert_eq!(BigUint::from(words.len()), total);
    assert!(words.windows(2).all(|p| GenOrder::identity(4)
        .deglex(p[0].letters(), p[1].letters())
        .is_lt()));
}

fn graph_and_word() -> impl Strategy<Value = (Digraph, Word)> {
    (1usize..=6)
        .prop_flat_map(|n| {
            (
                Just(n),
                0..Digraph::oriented_count(n),
                prop::collection::vec(1..=n as u8, 0..12),
            )
        })
        .prop_map(|(n, code, letters)| (Digraph::from_code(n, code).unwrap(), Word::new(letters)))
}

proptest! {
    #[test]
    fn accepted_language_is_factor_closed((g, u) in graph_and_word()) {
        let dfa = NormalWordDfa::for_graph(&g, &GenOrder::identity(g.n()));
        let t = RuleSystem::t(&g);
        let nf = t.normal_form(&u);
        prop_assert!(dfa.accepts(nf.letters()));
        let l = nf.letters();
        for i in 0..=l.len() {
            for j in i..=l.len() {
                prop_assert!(dfa.accepts(&l[i..j]));
            }
        }
    }
}
