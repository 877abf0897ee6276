mod common;

use std::cmp::Ordering;

use common::{all_words, random_graph, random_word, rng};
use hkmon::word::disconnected;
use hkmon::{congruence_closure, Digraph, GenOrder, RuleSystem, Word};
use proptest::prelude::*;
use rand::Rng;

#[test]
fn random_match_choices_reach_the_same_normal_form() {
    let mut r = rng(7);
    for _ in 0..40 {
        let n = r.gen_range(2..=5);
        let g = random_graph(&mut r, n);
        let t = RuleSystem::t(&g);
        for _ in 0..50 {
            let u = random_word(&mut r, n, 10);
            let expected = t.normal_form(&u);
            let mut pick = rng(r.gen());
            let got = t.normal_form_with(&u, |ms| pick.gen_range(0..ms.len()));
            assert_eq!(got, expected, "graph {} word {u}", g.to_file_string());
        }
    }
}

#[test]
fn every_step_strictly_decreases() {
    let mut r = rng(11);
    for _ in 0..30 {
        let n = r.gen_range(2..=5);
        let g = random_graph(&mut r, n);
        let t = RuleSystem::t(&g);
        let ord = GenOrder::identity(n);
        for _ in 0..30 {
            let mut prev = random_word(&mut r, n, 12);
            for (_, next) in t.trace(&prev) {
                assert_eq!(ord.deglex(next.letters(), prev.letters()), Ordering::Less);
                prev = next;
            }
            assert!(t.is_reduced(&prev));
        }
    }
}

#[test]
fn generators_are_idempotent() {
    let mut r = rng(3);
    for _ in 0..50 {
        let n = r.gen_range(1..=6);
        let g = random_graph(&mut r, n);
        let t = RuleSystem::t(&g);
        for x in 1..=n as u8 {
            assert_eq!(t.normal_form(&Word::new(vec![x, x])), Word::new(vec![x]));
        }
    }
}

#[test]
fn word_problem_matches_congruence_closure() {
    for n in 1..=3 {
        for code in 0..Digraph::oriented_count(n) {
            let g = Digraph::from_code(n, code).unwrap();
            let table = congruence_closure(&g, 4, 2, 1_000_000).unwrap();
            let t = RuleSystem::t(&g);
            let words: Vec<Word> = all_words(n, 4).collect();
            let forms: Vec<Word> = words.iter().map(|u| t.normal_form(u)).collect();
            for (i, u) in words.iter().enumerate() {
                for (j, v) in words.iter().enumerate().skip(i) {
                    assert_eq!(
                        table.same_class(u, v),
                        Some(forms[i] == forms[j]),
                        "graph {} words {u} {v}",
                        g.to_file_string()
                    );
                }
            }
        }
    }
}

#[test]
fn other_generator_orders_give_the_same_monoid() {
    let mut r = rng(23);
    for _ in 0..20 {
        let n = r.gen_range(2..=4);
        let g = random_graph(&mut r, n);
        let mut perm: Vec<usize> = (1..=n).collect();
        for i in (1..n).rev() {
            perm.swap(i, r.gen_range(0..=i));
        }
        let a = RuleSystem::t(&g);
        let b = RuleSystem::t_with_order(&g, GenOrder::from_ascending(&perm).unwrap()).unwrap();
        let words: Vec<Word> = all_words(n, 4).collect();
        for u in &words {
            for v in &words {
                let same_a = a.normal_form(u) == a.normal_form(v);
                let same_b = b.normal_form(u) == b.normal_form(v);
                assert_eq!(same_a, same_b);
            }
        }
    }
}

fn graph_and_word() -> impl Strategy<Value = (Digraph, u8, Word)> {
    (2usize..=6)
        .prop_flat_map(|n| {
            (
                Just(n),
                0..Digraph::oriented_count(n),
                1..=n as u8,
                prop::collection::vec(1..=n as u8, 0..8),
            )
        })
        .prop_map(|(n, code, t, letters)| {
            (Digraph::from_code(n, code).unwrap(), t, Word::new(letters))
        })
}

// A graph, a letter `t`, and a word over the letters not joined to `t`.
fn graph_letter_and_disconnected_word() -> impl Strategy<Value = (Digraph, u8, Word)> {
    graph_and_word().prop_map(|(g, t, u)| {
        let letters = u
            .letters()
            .iter()
            .copied()
            .filter(|&x| x != t && g.disconnected(x as usize, t as usize))
            .collect();
        (g, t, Word::new(letters))
    })
}

proptest! {
    #[test]
    fn disconnected_letters_slide_past(case in graph_letter_and_disconnected_word()) {
        let (g, t, u) = case;
        prop_assert!(disconnected(t, u.letters(), &g));
        let sys = RuleSystem::t(&g);
        let tw = Word::new(vec![t]).concat(&u);
        let wt = u.concat(&Word::new(vec![t]));
        prop_assert_eq!(sys.normal_form(&tw), sys.normal_form(&wt));
    }

    #[test]
    fn normal_forms_are_reduced_and_stable(case in graph_and_word()) {
        let (g, _, u) = case;
        let sys = RuleSystem::t(&g);
        let nf = sys.normal_form(&u);
        prop_assert!(sys.is_reduced(&nf));
        prop_assert_eq!(sys.normal_form(&nf), nf.clone());
        prop_assert!(nf.len() <= u.len());
    }
}
