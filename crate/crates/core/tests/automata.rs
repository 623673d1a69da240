mod common;

use common::oracle::pumping_violations;
use common::{random_relation, rng};
use proptest::prelude::*;
use rand::Rng;
use unary_fa::automata::{determinize, Dfa, UnaryAutomaton};
use unary_fa::diagram::{conv, unconv};
use unary_fa::{Relation, UnaryWord};

/// A random nondeterministic automaton with ε-moves over 2 tracks.
fn random_nfa(rng: &mut impl Rng) -> UnaryAutomaton {
    let states = rng.gen_range(2..=6);
    let mut a = UnaryAutomaton::new(2, states, 0);
    for s in 0..states {
        a.set_accepting(s, rng.gen_bool(0.3));
        for _ in 0..rng.gen_range(1..=4) {
            a.add_transition(s, rng.gen_range(1..4), rng.gen_range(0..states));
        }
        if rng.gen_bool(0.2) {
            a.add_epsilon(s, rng.gen_range(0..states));
        }
    }
    a
}

/// Runs the NFA on a word by explicit subset simulation.
fn nfa_accepts(a: &UnaryAutomaton, tuple: &[u64]) -> bool {
    let closure = |set: &mut Vec<bool>| {
        let mut stack: Vec<usize> = (0..set.len()).filter(|&s| set[s]).collect();
        while let Some(s) = stack.pop() {
            for &t in a.epsilons(s) {
                if !set[t] {
                    set[t] = true;
                    stack.push(t);
                }
            }
        }
    };
    let mut cur = vec![false; a.state_count()];
    cur[a.start()] = true;
    closure(&mut cur);
    let words: Vec<UnaryWord> = tuple.iter().map(|&v| UnaryWord(v)).collect();
    for letter in conv(&words) {
        let mut next = vec![false; a.state_count()];
        for s in (0..cur.len()).filter(|&s| cur[s]) {
            for &(l, t) in a.transitions(s) {
                if l == letter.active() {
                    next[t] = true;
                }
            }
        }
        closure(&mut next);
        cur = next;
    }
    a.accepting_states().any(|s| cur[s])
}

#[test]
fn determinize_and_minimize_preserve_membership() {
    let mut rng = rng(61);
    for _ in 0..100 {
        let a = random_nfa(&mut rng);
        let d = determinize(&a).unwrap();
        let m = d.minimize();
        let bound = 2 * a.state_count() * a.state_count();
        for x in 0..=bound as u64 {
            for y in 0..=bound as u64 {
                let expected = nfa_accepts(&a, &[x, y]);
                assert_eq!(d.accepts_lengths(&[x, y]), expected);
                assert_eq!(m.accepts_lengths(&[x, y]), expected);
            }
        }
    }
}

#[test]
fn equal_languages_have_equal_canonical_forms() {
    let mut rng = rng(62);
    let mut forms: Vec<(Dfa, UnaryAutomaton)> = Vec::new();
    for _ in 0..60 {
        let a = random_nfa(&mut rng);
        forms.push((determinize(&a).unwrap().minimize(), a));
    }
    for (da, _) in &forms {
        assert_eq!(&da.minimize(), da);
        for (db, _) in &forms {
            assert_eq!(da.same_language(db).unwrap(), da == db);
        }
    }
}

#[test]
fn random_relations_satisfy_the_shift_rules() {
    let mut rng = rng(63);
    for _ in 0..30 {
        let r = random_relation(&mut rng);
        let bad = pumping_violations(&r);
        assert!(bad.is_empty(), "{:?}", &bad[..bad.len().min(5)]);
    }
}

#[test]
fn pumping_constant_of_successor() {
    assert_eq!(common::succ().pumping_constant().get(), 3);
    assert_eq!(Relation::empty(2).pumping_constant().get(), 1);
}

proptest! {
    #[test]
    fn conv_round_trip(tuple in prop::collection::vec(0u64..=50, 1..=4)) {
        let words: Vec<UnaryWord> = tuple.iter().map(|&v| UnaryWord(v)).collect();
        let letters = conv(&words);
        prop_assert_eq!(letters.len() as u64, tuple.iter().copied().max().unwrap());
        prop_assert_eq!(unconv(&letters, tuple.len()).unwrap(), words);
    }

    #[test]
    fn minimize_is_idempotent(seed in any::<u64>()) {
        let a = random_nfa(&mut rng(seed));
        let m = determinize(&a).unwrap().minimize();
        prop_assert_eq!(m.minimize(), m);
    }
}
