//! Relations on ℕⁿ carried by minimized automata.

use std::fmt;

use crate::automata::{self, determinize, Dfa, Enumeration, ProductMode, UnaryAutomaton};
use crate::diagram::{all_active, conv_raw, track_bit, PumpingConstant};
use crate::error::{check_arity, Error, Result};

/// A regular relation of fixed arity. The carrier is always the canonical
/// minimal automaton and its language is a set of valid convolutions, so
/// structural equality is language equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    dfa: Dfa,
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Relation(arity {}, {} states)",
            self.arity(),
            self.dfa.state_count()
        )
    }
}

/// Moves the bits of an `n`-track pattern to the slots named by `map` in an
/// `m`-track pattern.
fn spread(letter: u32, n: usize, m: usize, map: &[usize]) -> u32 {
    let mut out = 0;
    for (i, &slot) in map.iter().enumerate() {
        if letter & track_bit(n, i) != 0 {
            out |= track_bit(m, slot);
        }
    }
    out
}

/// Inverse of [`spread`]: reads the mapped slots of an `m`-track pattern.
fn gather(letter: u32, n: usize, m: usize, map: &[usize]) -> u32 {
    let mut out = 0;
    for (i, &slot) in map.iter().enumerate() {
        if letter & track_bit(m, slot) != 0 {
            out |= track_bit(n, i);
        }
    }
    out
}

/// Removes track `drop` from an `n`-track pattern.
fn erase(letter: u32, n: usize, drop: usize) -> u32 {
    let pos = n - 1 - drop;
    let low = letter & ((1 << pos) - 1);
    let high = letter >> (pos + 1);
    (high << pos) | low
}

impl Relation {
    /// Wraps an automaton, intersecting with the valid convolutions and
    /// minimizing.
    pub fn from_dfa(dfa: &Dfa) -> Relation {
        let valid = Dfa::validity(dfa.tracks());
        let dfa = dfa
            .product(&valid, ProductMode::And)
            .expect("same arity")
            .minimize();
        Relation { dfa }
    }

    pub fn from_automaton(a: &UnaryAutomaton) -> Result<Relation> {
        Ok(Relation::from_dfa(&determinize(a)?))
    }

    pub fn parse(text: &str) -> Result<Relation> {
        Relation::from_automaton(&automata::parse_ufa(text)?)
    }

    /// Canonical `.ufa` text of the carrier.
    pub fn to_ufa(&self) -> String {
        automata::write_ufa(&self.dfa.to_automaton())
    }

    pub fn arity(&self) -> usize {
        self.dfa.tracks()
    }

    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    pub fn to_automaton(&self) -> UnaryAutomaton {
        self.dfa.to_automaton()
    }

    pub fn diagonal() -> Relation {
        let mut a = UnaryAutomaton::new(2, 1, 0);
        a.add_transition(0, 0b11, 0);
        a.set_accepting(0, true);
        Relation::from_automaton(&a).unwrap()
    }

    /// `{(m, n) : m < n}`.
    pub fn length_lt() -> Relation {
        let mut a = UnaryAutomaton::new(2, 2, 0);
        a.add_transition(0, 0b11, 0);
        a.add_transition(0, 0b01, 1);
        a.add_transition(1, 0b01, 1);
        a.set_accepting(1, true);
        Relation::from_automaton(&a).unwrap()
    }

    pub fn full(arity: usize) -> Relation {
        Relation {
            dfa: Dfa::validity(arity).minimize(),
        }
    }

    pub fn empty(arity: usize) -> Relation {
        Relation {
            dfa: Dfa::empty(arity),
        }
    }

    /// The finite relation listing exactly `tuples`.
    pub fn finite(arity: usize, tuples: &[Vec<u64>]) -> Relation {
        let mut a = UnaryAutomaton::new(arity, 1, 0);
        for t in tuples {
            assert_eq!(t.len(), arity, "tuple arity");
            let mut state = 0;
            let letters: Vec<u32> = conv_raw(t).collect();
            if letters.is_empty() {
                a.set_accepting(0, true);
                continue;
            }
            for l in letters {
                let next = a.add_state();
                a.add_transition(state, l, next);
                state = next;
            }
            a.set_accepting(state, true);
        }
        Relation::from_automaton(&a).unwrap()
    }

    /// `{(c·m + o, …) : (m, …) ∈ self}`: every component scaled by `factor`
    /// and shifted by `offset`.
    pub fn affine_image(&self, factor: u64, offset: u64) -> Relation {
        assert!(factor >= 1);
        let n = self.arity();
        let mut a = UnaryAutomaton::new(n, 1, 0);
        // prefix of `offset` all-active letters, then each letter repeated
        let mut state = 0;
        for _ in 0..offset {
            let next = a.add_state();
            a.add_transition(state, all_active(n), next);
            state = next;
        }
        let base = a.state_count();
        let states = self.dfa.state_count();
        for _ in 0..states {
            a.add_state();
        }
        a.add_epsilon(state, base + self.dfa.start() as usize);
        for s in 0..states as u32 {
            let from = base + s as usize;
            a.set_accepting(from, self.dfa.is_accepting(s));
            for (l, t) in self.dfa.edges(s) {
                let mut cur = from;
                for _ in 1..factor {
                    let next = a.add_state();
                    a.add_transition(cur, l, next);
                    cur = next;
                }
                a.add_transition(cur, l, base + t as usize);
            }
        }
        Relation::from_automaton(&a).unwrap()
    }

    pub fn accepts(&self, tuple: &[u64]) -> bool {
        self.dfa.accepts_lengths(tuple)
    }

    pub fn is_empty(&self) -> bool {
        self.dfa.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.dfa.is_finite()
    }

    pub fn enumerate(&self, limit: usize) -> Enumeration {
        self.dfa.enumerate(limit)
    }

    pub fn pumping_constant(&self) -> PumpingConstant {
        self.dfa.pumping_constant()
    }

    fn combine(&self, other: &Relation, mode: ProductMode) -> Result<Relation> {
        check_arity(self.arity(), other.arity())?;
        Ok(Relation {
            dfa: self.dfa.product(&other.dfa, mode)?.minimize(),
        })
    }

    pub fn union(&self, other: &Relation) -> Result<Relation> {
        self.combine(other, ProductMode::Or)
    }

    pub fn intersection(&self, other: &Relation) -> Result<Relation> {
        self.combine(other, ProductMode::And)
    }

    pub fn difference(&self, other: &Relation) -> Result<Relation> {
        self.combine(other, ProductMode::Diff)
    }

    pub fn complement(&self) -> Relation {
        Relation {
            dfa: self.dfa.complement_within_validity().minimize(),
        }
    }

    pub fn is_subset_of(&self, other: &Relation) -> Result<bool> {
        check_arity(self.arity(), other.arity())?;
        self.dfa.is_subset_of(&other.dfa)
    }

    /// Rewrites every letter with `f`; `f` must map valid sequences to valid
    /// sequences of width `tracks`.
    fn map_letters(&self, tracks: usize, f: impl Fn(u32) -> u32) -> Relation {
        let mut a = UnaryAutomaton::new(tracks, self.dfa.state_count(), self.dfa.start() as usize);
        for s in 0..self.dfa.state_count() as u32 {
            a.set_accepting(s as usize, self.dfa.is_accepting(s));
            for (l, t) in self.dfa.edges(s) {
                let m = f(l);
                if m == 0 {
                    a.add_epsilon(s as usize, t as usize);
                } else {
                    a.add_transition(s as usize, m, t as usize);
                }
            }
        }
        Relation::from_automaton(&a).unwrap()
    }

    /// Swaps the two components of a binary relation.
    pub fn converse(&self) -> Result<Relation> {
        check_arity(2, self.arity())?;
        Ok(self.map_letters(2, |l| ((l & 1) << 1) | (l >> 1)))
    }

    /// Reorders the components: component `i` of the result is component
    /// `perm[i]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Result<Relation> {
        let n = self.arity();
        let mut seen = vec![false; n];
        if perm.len() != n
            || perm
                .iter()
                .any(|&p| p >= n || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::BadSlotMap {
                map: perm.to_vec(),
                target: n,
            });
        }
        // source track perm[i] lands in slot i
        let mut map = vec![0; n];
        for (i, &p) in perm.iter().enumerate() {
            map[p] = i;
        }
        Ok(self.map_letters(n, |l| spread(l, n, n, &map)))
    }

    /// Embeds into arity `target`: component `i` of `self` becomes slot
    /// `map[i]`; the other slots are unconstrained.
    pub fn cylindrify(&self, target: usize, map: &[usize]) -> Result<Relation> {
        let n = self.arity();
        let mut used = vec![false; target];
        let ok = map.len() == n
            && target <= automata::MAX_TRACKS
            && map
                .iter()
                .all(|&s| s < target && !std::mem::replace(&mut used[s], true));
        if !ok {
            return Err(Error::BadSlotMap {
                map: map.to_vec(),
                target,
            });
        }
        let width = 1usize << target;
        let states = self.dfa.state_count();
        let done = states as u32;
        let mut delta = vec![automata::NONE; (states + 1) * width];
        let mut accepting = vec![false; states + 1];
        accepting[states] = true;
        for s in 0..states as u32 {
            accepting[s as usize] = self.dfa.is_accepting(s);
            for l in 1..width as u32 {
                let g = gather(l, n, target, map);
                let t = if g == 0 {
                    if self.dfa.is_accepting(s) {
                        Some(done)
                    } else {
                        None
                    }
                } else {
                    self.dfa.next(s, g)
                };
                if let Some(t) = t {
                    delta[s as usize * width + l as usize] = t;
                }
            }
        }
        for l in 1..width as u32 {
            if gather(l, n, target, map) == 0 {
                delta[states * width + l as usize] = done;
            }
        }
        let dfa = Dfa::from_parts(target, self.dfa.start(), accepting, delta);
        Ok(Relation::from_dfa(&dfa))
    }

    /// Existentially quantifies component `drop` away.
    pub fn project(&self, drop: usize) -> Result<Relation> {
        if self.arity() < 2 {
            return Err(Error::ArityMismatch {
                expected: 2,
                found: self.arity(),
            });
        }
        self.project_any(drop)
    }

    /// Projection that also allows going down to arity 0, where the result
    /// is `{()}` or `∅`.
    pub(crate) fn project_any(&self, drop: usize) -> Result<Relation> {
        let n = self.arity();
        if drop >= n {
            return Err(Error::BadSlotMap {
                map: vec![drop],
                target: n,
            });
        }
        // letters that only move the dropped track become ε-moves; this also
        // covers a dropped component longer than all kept ones
        Ok(self.map_letters(n - 1, |l| erase(l, n, drop)))
    }

    /// `{(x, z) : ∃y. (x, y) ∈ self ∧ (y, z) ∈ other}`.
    pub fn compose(&self, other: &Relation) -> Result<Relation> {
        check_arity(2, self.arity())?;
        check_arity(2, other.arity())?;
        let left = self.cylindrify(3, &[0, 1])?;
        let right = other.cylindrify(3, &[1, 2])?;
        left.intersection(&right)?.project(1)
    }

    /// Keeps the tuples whose component `track` lies in the unary relation
    /// `set`.
    pub fn restrict(&self, track: usize, set: &Relation) -> Result<Relation> {
        check_arity(1, set.arity())?;
        let lifted = set.cylindrify(self.arity(), &[track])?;
        self.intersection(&lifted)
    }

    /// Membership matrix `m[x][y]` for `x, y < bound` in `O(bound²)` steps.
    pub fn pair_matrix(&self, bound: usize) -> Vec<Vec<bool>> {
        assert_eq!(self.arity(), 2);
        let dfa = &self.dfa;
        let accepted = |s: Option<u32>| s.is_some_and(|c| dfa.is_accepting(c));
        // diag[i]: state after (11)^i
        let mut diag = vec![Some(dfa.start()); bound];
        for i in 1..bound {
            diag[i] = diag[i - 1].and_then(|s| dfa.next(s, 0b11));
        }
        let mut out = vec![vec![false; bound]; bound];
        for i in 0..bound {
            out[i][i] = accepted(diag[i]);
            let mut left = diag[i];
            let mut right = diag[i];
            for j in i + 1..bound {
                left = left.and_then(|s| dfa.next(s, 0b10));
                right = right.and_then(|s| dfa.next(s, 0b01));
                out[j][i] = accepted(left);
                out[i][j] = accepted(right);
            }
        }
        out
    }
}
