#![allow(dead_code, clippy::needless_range_loop)]

pub mod oracle;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use unary_fa::automata::{Dfa, UnaryAutomaton};
use unary_fa::foundational::{FoundationalRelation, Sort, Tag};
use unary_fa::Relation;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn succ() -> Relation {
    let mut a = UnaryAutomaton::new(2, 2, 0);
    a.add_transition(0, 0b11, 0);
    a.add_transition(0, 0b01, 1);
    a.set_accepting(1, true);
    Relation::from_automaton(&a).unwrap()
}

/// `{(m, n) : m ≤ n}` written out by hand.
pub fn leq() -> Relation {
    let mut a = UnaryAutomaton::new(2, 2, 0);
    a.add_transition(0, 0b11, 0);
    a.add_transition(0, 0b01, 1);
    a.add_transition(1, 0b01, 1);
    a.set_accepting(0, true);
    a.set_accepting(1, true);
    Relation::from_automaton(&a).unwrap()
}

/// `{(m, n) : m < n}` written out by hand.
pub fn lt() -> Relation {
    let mut a = UnaryAutomaton::new(2, 2, 0);
    a.add_transition(0, 0b11, 0);
    a.add_transition(0, 0b01, 1);
    a.add_transition(1, 0b01, 1);
    a.set_accepting(1, true);
    Relation::from_automaton(&a).unwrap()
}

/// A random automaton with 4 to 8 states over the binary letters,
/// intersected with the valid convolutions. Empty draws are redrawn.
pub fn random_relation(rng: &mut impl Rng) -> Relation {
    random_relation_arity(rng, 2)
}

pub fn random_relation_arity(rng: &mut impl Rng, arity: usize) -> Relation {
    loop {
        let r = random_draw(rng, arity);
        if !r.is_empty() {
            return r;
        }
    }
}

fn random_draw(rng: &mut impl Rng, arity: usize) -> Relation {
    let states = rng.gen_range(4..=8);
    let width = 1usize << arity;
    let mut delta = vec![u32::MAX; states * width];
    for s in 0..states {
        for l in 1..width {
            if rng.gen_bool(0.7) {
                delta[s * width + l] = rng.gen_range(0..states) as u32;
            }
        }
    }
    let accepting = (0..states).map(|_| rng.gen_bool(0.4)).collect();
    Relation::from_dfa(&Dfa::from_parts(arity, 0, accepting, delta))
}

/// Reflexive-transitive reachability of `r` restricted to `{0..n}`.
pub fn reach(r: &Relation, n: usize) -> Vec<Vec<bool>> {
    let m = r.pair_matrix(n);
    let mut out = vec![vec![false; n]; n];
    for s in 0..n {
        let mut stack = vec![s];
        out[s][s] = true;
        while let Some(x) = stack.pop() {
            for y in 0..n {
                if m[x][y] && !out[s][y] {
                    out[s][y] = true;
                    stack.push(y);
                }
            }
        }
    }
    out
}

/// A random valid foundational relation with `|Q'| ≤ 4` and `1..=3` seeds.
pub fn random_foundational(rng: &mut impl Rng) -> FoundationalRelation {
    let qprime = rng.gen_range(0..=4);
    let seeds = rng.gen_range(1..=3);
    let mut conns = Vec::new();
    for tag in Tag::ALL {
        let (a, b) = tag.sorts();
        let size = |s: Sort| if s == Sort::Seed { seeds } else { qprime };
        for src in 0..size(a) {
            for dst in 0..size(b) {
                if rng.gen_bool(0.3) {
                    conns.push((tag, src, dst));
                }
            }
        }
    }
    let mut edges = Vec::new();
    for a in 0..qprime {
        for b in 0..qprime {
            if rng.gen_bool(0.3) {
                edges.push((a, b));
            }
        }
    }
    FoundationalRelation::from_connections(qprime, seeds, &conns, &edges).unwrap()
}
