//! Reflexive-transitive, transitive and equivalence closure with an
//! algebraic certificate.
//!
//! For `S = R^{≤k}`, let `V` be the pairs joined by a strictly
//! length-increasing `S`-chain and `V'` the strictly decreasing ones. Then
//! `W = S ∪ S∘V ∪ V'∘S ∪ V'∘S∘V` lies inside `R*` for every `k`, and equals
//! it once `k` is large enough. `k` is doubled until `W` provably contains
//! the diagonal and `R` and is transitive, which forces `W ⊇ R*`.

use crate::automata::{determinize, UnaryAutomaton};
use crate::error::{check_arity, Error, Result};
use crate::relation::Relation;

pub const DEFAULT_MAX_K: usize = 4096;

const BOTH: u32 = 0b11;
const SECOND: u32 = 0b01;
const FIRST: u32 = 0b10;

/// Evidence that a returned relation is the reflexive-transitive closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureCertificate {
    /// The `k` of `R^{≤k}` that passed.
    pub k: usize,
    pub iterations: usize,
    pub contains_diagonal: bool,
    pub contains_relation: bool,
    pub transitive: bool,
}

/// `E ∪ R ∪ R² ∪ … ∪ R^k`.
pub fn bounded_power(r: &Relation, k: usize) -> Result<Relation> {
    check_arity(2, r.arity())?;
    let mut base = r.union(&Relation::diagonal())?;
    let mut acc = Relation::diagonal();
    let mut k = k;
    while k > 0 {
        if k & 1 == 1 {
            acc = acc.compose(&base)?;
        }
        k >>= 1;
        if k > 0 {
            base = base.compose(&base)?;
        }
    }
    Ok(acc)
}

/// Two copies of the automaton of `s` run side by side. Copy 1 reads the
/// input, whose second letter is `step` (`_1` for increasing chains, `1_`
/// for decreasing ones); copy 2 only ever reads `11`, so it sits where a
/// fresh pair starting at the current position would be. Whenever copy 1
/// accepts, the current position may become the next chain element: an
/// ε-move restarts copy 1 from copy 2.
fn chain_automaton(s: &Relation, step: u32) -> Result<Relation> {
    check_arity(2, s.arity())?;
    let dfa = s.dfa();
    let n = dfa.state_count();
    // state (f, q) ↦ f * (n + 1) + q, with q = n meaning copy 2 is dead
    let id = |f: u32, q: Option<u32>| f as usize * (n + 1) + q.map_or(n, |q| q as usize);
    let mut a = UnaryAutomaton::new(2, n * (n + 1), id(dfa.start(), Some(dfa.start())));
    for f in 0..n as u32 {
        for qi in 0..=n {
            let q = (qi < n).then_some(qi as u32);
            let here = id(f, q);
            a.set_accepting(here, dfa.is_accepting(f));
            let q_next = q.and_then(|q| dfa.next(q, BOTH));
            for letter in [BOTH, step] {
                if let Some(f_next) = dfa.next(f, letter) {
                    a.add_transition(here, letter, id(f_next, q_next));
                }
            }
            if let (true, Some(q)) = (dfa.is_accepting(f), q) {
                a.add_epsilon(here, id(q, Some(q)));
            }
        }
    }
    Ok(Relation::from_dfa(&determinize(&a)?))
}

/// Pairs `(x, y)` joined by an `s`-chain of strictly increasing lengths.
pub fn build_v(s: &Relation) -> Result<Relation> {
    chain_automaton(s, SECOND)?.intersection(&Relation::length_lt())
}

/// Pairs `(x, y)` joined by an `s`-chain of strictly decreasing lengths.
pub fn build_v_prime(s: &Relation) -> Result<Relation> {
    chain_automaton(s, FIRST)?.intersection(&Relation::length_lt().converse()?)
}

/// The candidate closure for a given `k`; always a subset of `R*`.
pub fn assemble(r: &Relation, k: usize) -> Result<Relation> {
    let s = bounded_power(r, k)?;
    let v = build_v(&s)?;
    let vp = build_v_prime(&s)?;
    let sv = s.compose(&v)?;
    let vps = vp.compose(&s)?;
    let vpsv = vps.compose(&v)?;
    s.union(&sv)?.union(&vps)?.union(&vpsv)
}

fn certify(r: &Relation, w: &Relation) -> Result<(bool, bool, bool)> {
    let diag = Relation::diagonal().is_subset_of(w)?;
    let contains = r.is_subset_of(w)?;
    let transitive = diag && contains && w.compose(w)?.is_subset_of(w)?;
    Ok((diag, contains, transitive))
}

pub fn star_closure(r: &Relation) -> Result<(Relation, ClosureCertificate)> {
    star_closure_with_budget(r, DEFAULT_MAX_K)
}

/// Doubles `k` from 1 up to `max_k`; fails rather than return an
/// uncertified relation.
pub fn star_closure_with_budget(
    r: &Relation,
    max_k: usize,
) -> Result<(Relation, ClosureCertificate)> {
    check_arity(2, r.arity())?;
    let mut k = 1;
    let mut iterations = 0;
    while k <= max_k {
        iterations += 1;
        let w = assemble(r, k)?;
        let (contains_diagonal, contains_relation, transitive) = certify(r, &w)?;
        if contains_diagonal && contains_relation && transitive {
            return Ok((
                w,
                ClosureCertificate {
                    k,
                    iterations,
                    contains_diagonal,
                    contains_relation,
                    transitive,
                },
            ));
        }
        k *= 2;
    }
    Err(Error::ClosureBudgetExceeded(max_k))
}

/// `R⁺ = R ∘ R*`.
pub fn plus_closure(r: &Relation) -> Result<Relation> {
    plus_closure_with_budget(r, DEFAULT_MAX_K)
}

pub fn plus_closure_with_budget(r: &Relation, max_k: usize) -> Result<Relation> {
    let (star, _) = star_closure_with_budget(r, max_k)?;
    r.compose(&star)
}

/// The equivalence relation generated by `R`.
pub fn equivalence_closure(r: &Relation) -> Result<Relation> {
    equivalence_closure_with_budget(r, DEFAULT_MAX_K)
}

pub fn equivalence_closure_with_budget(r: &Relation, max_k: usize) -> Result<Relation> {
    check_arity(2, r.arity())?;
    let symmetric = r.union(&r.converse()?)?;
    Ok(star_closure_with_budget(&symmetric, max_k)?.0)
}
