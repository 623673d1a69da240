//! Finite automata over convolution letters.
//!
//! [`UnaryAutomaton`] is the general form (nondeterministic, optional
//! ε-moves) that files are read into. [`Dfa`] is the deterministic, partial
//! form every construction works on: a missing transition rejects. The
//! canonical form produced by [`Dfa::minimize`] is the minimal DFA with the
//! dead state removed and states numbered breadth-first from the start state,
//! visiting letters in ascending pattern order. Two DFAs accept the same
//! language iff their canonical forms are equal.

mod format;

pub use format::{parse_ufa, to_dot, write_ufa};

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::diagram::{all_active, conv_raw, UnaryWord};
use crate::error::{Error, Result};

/// Widest track count the dense transition tables accept.
pub const MAX_TRACKS: usize = 12;

pub(crate) const NONE: u32 = u32::MAX;

/// A finite automaton whose letters are track patterns. May be
/// nondeterministic and carry ε-moves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnaryAutomaton {
    tracks: usize,
    start: usize,
    accepting: Vec<bool>,
    transitions: Vec<Vec<(u32, usize)>>,
    epsilon: Vec<Vec<usize>>,
}

impl UnaryAutomaton {
    /// An automaton with `states` states and no transitions.
    pub fn new(tracks: usize, states: usize, start: usize) -> Self {
        assert!(start < states.max(1));
        let states = states.max(1);
        UnaryAutomaton {
            tracks,
            start,
            accepting: vec![false; states],
            transitions: vec![Vec::new(); states],
            epsilon: vec![Vec::new(); states],
        }
    }

    pub fn tracks(&self) -> usize {
        self.tracks
    }

    pub fn state_count(&self) -> usize {
        self.accepting.len()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn add_state(&mut self) -> usize {
        self.accepting.push(false);
        self.transitions.push(Vec::new());
        self.epsilon.push(Vec::new());
        self.accepting.len() - 1
    }

    pub fn set_accepting(&mut self, state: usize, accepting: bool) {
        self.accepting[state] = accepting;
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting[state]
    }

    pub fn accepting_states(&self) -> impl Iterator<Item = usize> + '_ {
        self.accepting
            .iter()
            .enumerate()
            .filter(|(_, &a)| a)
            .map(|(s, _)| s)
    }

    /// Adds `from --pattern--> to`. The all-clear pattern is not a letter.
    pub fn add_transition(&mut self, from: usize, pattern: u32, to: usize) {
        assert!(pattern != 0 && pattern <= all_active(self.tracks));
        if !self.transitions[from].contains(&(pattern, to)) {
            self.transitions[from].push((pattern, to));
        }
    }

    pub fn add_epsilon(&mut self, from: usize, to: usize) {
        if !self.epsilon[from].contains(&to) {
            self.epsilon[from].push(to);
        }
    }

    pub fn transitions(&self, state: usize) -> &[(u32, usize)] {
        &self.transitions[state]
    }

    pub fn epsilons(&self, state: usize) -> &[usize] {
        &self.epsilon[state]
    }

    pub fn is_deterministic(&self) -> bool {
        self.epsilon.iter().all(Vec::is_empty)
            && self.transitions.iter().all(|ts| {
                let letters: BTreeSet<u32> = ts.iter().map(|&(l, _)| l).collect();
                letters.len() == ts.len()
            })
    }

    fn closure(&self, seeds: &mut Vec<u32>) {
        let mut stack: Vec<u32> = seeds.clone();
        let mut seen: BTreeSet<u32> = seeds.iter().copied().collect();
        while let Some(s) = stack.pop() {
            for &t in &self.epsilon[s as usize] {
                if seen.insert(t as u32) {
                    stack.push(t as u32);
                }
            }
        }
        *seeds = seen.into_iter().collect();
    }
}

/// Subset construction, ε-closures included. The result is not minimized.
pub fn determinize(nfa: &UnaryAutomaton) -> Result<Dfa> {
    if nfa.tracks > MAX_TRACKS {
        return Err(Error::TooManyTracks(nfa.tracks));
    }
    let width = 1usize << nfa.tracks;
    let mut start = vec![nfa.start as u32];
    nfa.closure(&mut start);

    let mut index: HashMap<Vec<u32>, u32> = HashMap::new();
    let mut sets: Vec<Vec<u32>> = Vec::new();
    index.insert(start.clone(), 0);
    sets.push(start);

    let mut delta: Vec<u32> = Vec::new();
    let mut accepting = Vec::new();
    let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); width];
    let mut i = 0;
    while i < sets.len() {
        let set = sets[i].clone();
        accepting.push(set.iter().any(|&s| nfa.accepting[s as usize]));
        for b in buckets.iter_mut() {
            b.clear();
        }
        for &s in &set {
            for &(letter, to) in &nfa.transitions[s as usize] {
                buckets[letter as usize].push(to as u32);
            }
        }
        let row = delta.len();
        delta.resize(row + width, NONE);
        for letter in 1..width {
            if buckets[letter].is_empty() {
                continue;
            }
            let mut target = std::mem::take(&mut buckets[letter]);
            target.sort_unstable();
            target.dedup();
            nfa.closure(&mut target);
            let id = match index.get(&target) {
                Some(&id) => id,
                None => {
                    let id = sets.len() as u32;
                    index.insert(target.clone(), id);
                    sets.push(target);
                    id
                }
            };
            delta[row + letter] = id;
        }
        i += 1;
    }
    Ok(Dfa {
        tracks: nfa.tracks,
        start: 0,
        accepting,
        delta,
    })
}

/// Boolean combination used by [`Dfa::product`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductMode {
    And,
    Or,
    Diff,
}

/// Partial deterministic automaton with dense transition rows.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dfa {
    tracks: usize,
    start: u32,
    accepting: Vec<bool>,
    delta: Vec<u32>,
}

impl Dfa {
    /// Builds a DFA from raw parts. `delta` is row-major with `1 << tracks`
    /// columns; [`u32::MAX`] marks a missing transition.
    pub fn from_parts(tracks: usize, start: u32, accepting: Vec<bool>, delta: Vec<u32>) -> Self {
        assert!(tracks <= MAX_TRACKS);
        assert_eq!(delta.len(), accepting.len() << tracks);
        assert!((start as usize) < accepting.len());
        Dfa {
            tracks,
            start,
            accepting,
            delta,
        }
    }

    /// The automaton accepting nothing.
    pub fn empty(tracks: usize) -> Self {
        Dfa {
            tracks,
            start: 0,
            accepting: vec![false],
            delta: vec![NONE; 1 << tracks],
        }
    }

    /// Accepts exactly the pattern-monotone letter sequences: a track, once
    /// padded, stays padded.
    pub fn validity(tracks: usize) -> Self {
        assert!(tracks <= MAX_TRACKS);
        let width = 1usize << tracks;
        // state 0 is the start; state p (p > 0) means the last letter was p.
        let mut delta = vec![NONE; width * width];
        for letter in 1..width {
            delta[letter] = letter as u32;
        }
        for last in 1..width {
            for letter in 1..width {
                if letter & !last == 0 {
                    delta[last * width + letter] = letter as u32;
                }
            }
        }
        Dfa {
            tracks,
            start: 0,
            accepting: vec![true; width],
            delta,
        }
    }

    pub fn tracks(&self) -> usize {
        self.tracks
    }

    pub fn width(&self) -> usize {
        1 << self.tracks
    }

    pub fn state_count(&self) -> usize {
        self.accepting.len()
    }

    pub fn start(&self) -> u32 {
        self.start
    }

    pub fn is_accepting(&self, state: u32) -> bool {
        self.accepting[state as usize]
    }

    #[inline]
    pub fn next(&self, state: u32, letter: u32) -> Option<u32> {
        let t = self.delta[((state as usize) << self.tracks) + letter as usize];
        (t != NONE).then_some(t)
    }

    /// Outgoing transitions of `state` in ascending letter order.
    pub fn edges(&self, state: u32) -> impl Iterator<Item = (u32, u32)> + '_ {
        let row = (state as usize) << self.tracks;
        (1..self.width()).filter_map(move |l| {
            let t = self.delta[row + l];
            (t != NONE).then_some((l as u32, t))
        })
    }

    /// Runs the automaton over a raw letter sequence.
    pub fn run(&self, letters: impl IntoIterator<Item = u32>) -> Option<u32> {
        let mut state = self.start;
        for letter in letters {
            state = self.next(state, letter)?;
        }
        Some(state)
    }

    /// Membership of a tuple of word lengths.
    pub fn accepts_lengths(&self, tuple: &[u64]) -> bool {
        assert_eq!(tuple.len(), self.tracks, "tuple arity");
        self.run(conv_raw(tuple))
            .is_some_and(|s| self.accepting[s as usize])
    }

    pub fn accepts(&self, tuple: &[UnaryWord]) -> bool {
        let lengths: Vec<u64> = tuple.iter().map(|w| w.0).collect();
        self.accepts_lengths(&lengths)
    }

    pub fn to_automaton(&self) -> UnaryAutomaton {
        let mut a = UnaryAutomaton::new(self.tracks, self.state_count(), self.start as usize);
        for s in 0..self.state_count() as u32 {
            a.set_accepting(s as usize, self.accepting[s as usize]);
            for (l, t) in self.edges(s) {
                a.add_transition(s as usize, l, t as usize);
            }
        }
        a
    }

    pub fn from_automaton(a: &UnaryAutomaton) -> Result<Dfa> {
        determinize(a)
    }

    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.state_count()];
        let mut stack = vec![self.start];
        seen[self.start as usize] = true;
        while let Some(s) = stack.pop() {
            for (_, t) in self.edges(s) {
                if !seen[t as usize] {
                    seen[t as usize] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    fn coreachable(&self) -> Vec<bool> {
        let n = self.state_count();
        let mut preds: Vec<Vec<u32>> = vec![Vec::new(); n];
        for s in 0..n as u32 {
            for (_, t) in self.edges(s) {
                preds[t as usize].push(s);
            }
        }
        let mut seen = self.accepting.clone();
        let mut stack: Vec<u32> = (0..n as u32).filter(|&s| seen[s as usize]).collect();
        while let Some(s) = stack.pop() {
            for &p in &preds[s as usize] {
                if !seen[p as usize] {
                    seen[p as usize] = true;
                    stack.push(p);
                }
            }
        }
        seen
    }

    /// Live states: reachable from the start and co-reachable to acceptance.
    fn live(&self) -> Vec<bool> {
        let r = self.reachable();
        let c = self.coreachable();
        r.iter().zip(&c).map(|(&a, &b)| a && b).collect()
    }

    pub fn is_empty(&self) -> bool {
        !self.live()[self.start as usize]
    }

    /// True iff the accepted language is finite.
    pub fn is_finite(&self) -> bool {
        let live = self.live();
        // a cycle through live states means infinitely many words
        let n = self.state_count();
        let mut color = vec![0u8; n];
        for root in 0..n {
            if !live[root] || color[root] != 0 {
                continue;
            }
            let mut stack: Vec<(u32, usize)> = vec![(root as u32, 1)];
            color[root] = 1;
            while let Some(&mut (s, ref mut next_letter)) = stack.last_mut() {
                let row = (s as usize) << self.tracks;
                let mut advanced = false;
                while *next_letter < self.width() {
                    let t = self.delta[row + *next_letter];
                    *next_letter += 1;
                    if t == NONE || !live[t as usize] {
                        continue;
                    }
                    match color[t as usize] {
                        1 => return false,
                        0 => {
                            color[t as usize] = 1;
                            stack.push((t, 1));
                            advanced = true;
                            break;
                        }
                        _ => {}
                    }
                }
                if !advanced {
                    color[s as usize] = 2;
                    stack.pop();
                }
            }
        }
        true
    }

    /// Canonical minimal form: dead state dropped, states renumbered
    /// breadth-first from the start, letters in ascending pattern order.
    pub fn minimize(&self) -> Dfa {
        let live = self.live();
        if !live[self.start as usize] {
            return Dfa::empty(self.tracks);
        }
        let width = self.width();
        // compact the live states; index `n` is the dead sink
        let mut id = vec![NONE; self.state_count()];
        let mut order = Vec::new();
        for (s, &l) in live.iter().enumerate() {
            if l {
                id[s] = order.len() as u32;
                order.push(s);
            }
        }
        let n = order.len();
        let sink = n as u32;
        let succ = |s: usize, l: usize| -> u32 {
            if s == n {
                return sink;
            }
            let t = self.delta[(order[s] << self.tracks) + l];
            if t == NONE || id[t as usize] == NONE {
                sink
            } else {
                id[t as usize]
            }
        };
        // letters that occur at all; others always lead to the sink
        let mut used = vec![false; width];
        for &s in &order {
            for (l, _) in self.edges(s as u32) {
                used[l as usize] = true;
            }
        }
        let letters: Vec<usize> = (1..width).filter(|&l| used[l]).collect();
        let mut succs: Vec<u32> = Vec::with_capacity((n + 1) * letters.len());
        for s in 0..=n {
            for &l in &letters {
                succs.push(succ(s, l));
            }
        }
        let k = letters.len();

        // Moore refinement
        let mut class: Vec<u32> = (0..=n)
            .map(|s| {
                if s < n && self.accepting[order[s]] {
                    1
                } else {
                    0
                }
            })
            .collect();
        let mut classes = if class.contains(&1) { 2 } else { 1 };
        if class.iter().all(|&c| c == 1) {
            // impossible since the sink is rejecting; kept for clarity
            classes = 1;
        }
        let mut sig: HashMap<Vec<u32>, u32> = HashMap::new();
        let mut key = Vec::with_capacity(k + 1);
        loop {
            sig.clear();
            let mut next = vec![0u32; n + 1];
            for s in 0..=n {
                key.clear();
                key.push(class[s]);
                for j in 0..k {
                    key.push(class[succs[s * k + j] as usize]);
                }
                let fresh = sig.len() as u32;
                next[s] = *sig.entry(key.clone()).or_insert(fresh);
            }
            let count = sig.len();
            class = next;
            if count == classes {
                break;
            }
            classes = count;
        }

        // canonical BFS numbering over classes, skipping the sink class
        let sink_class = class[n];
        let mut rep = vec![usize::MAX; classes];
        for s in (0..=n).rev() {
            rep[class[s] as usize] = s;
        }
        let start_class = class[id[self.start as usize] as usize];
        let mut number = vec![NONE; classes];
        number[start_class as usize] = 0;
        let mut queue = VecDeque::from([start_class]);
        let mut reps = Vec::new();
        while let Some(c) = queue.pop_front() {
            reps.push(c);
            let s = rep[c as usize];
            for j in 0..k {
                let tc = class[succs[s * k + j] as usize];
                if tc != sink_class && number[tc as usize] == NONE {
                    number[tc as usize] = (reps.len() + queue.len()) as u32;
                    queue.push_back(tc);
                }
            }
        }
        let m = reps.len();
        let mut delta = vec![NONE; m * width];
        let mut accepting = vec![false; m];
        for (i, &c) in reps.iter().enumerate() {
            let s = rep[c as usize];
            accepting[i] = self.accepting[order[s]];
            for (j, &l) in letters.iter().enumerate() {
                let tc = class[succs[s * k + j] as usize];
                if tc != sink_class {
                    delta[i * width + l] = number[tc as usize];
                }
            }
        }
        Dfa {
            tracks: self.tracks,
            start: 0,
            accepting,
            delta,
        }
    }

    /// Synchronous product over reachable state pairs.
    pub fn product(&self, other: &Dfa, mode: ProductMode) -> Result<Dfa> {
        crate::error::check_arity(self.tracks, other.tracks)?;
        let width = self.width();
        let pack = |a: u32, b: u32| ((a as u64) << 32) | b as u64;
        let mut index: HashMap<u64, u32> = HashMap::new();
        let mut pairs: Vec<(u32, u32)> = vec![(self.start, other.start)];
        index.insert(pack(self.start, other.start), 0);
        let mut delta = Vec::new();
        let mut accepting = Vec::new();
        let keep_left = mode != ProductMode::And;
        let keep_right = mode == ProductMode::Or;
        let mut i = 0;
        while i < pairs.len() {
            let (a, b) = pairs[i];
            let acc_a = a != NONE && self.accepting[a as usize];
            let acc_b = b != NONE && other.accepting[b as usize];
            accepting.push(match mode {
                ProductMode::And => acc_a && acc_b,
                ProductMode::Or => acc_a || acc_b,
                ProductMode::Diff => acc_a && !acc_b,
            });
            let row = delta.len();
            delta.resize(row + width, NONE);
            for l in 1..width {
                let ta = if a == NONE {
                    NONE
                } else {
                    self.delta[((a as usize) << self.tracks) + l]
                };
                let tb = if b == NONE {
                    NONE
                } else {
                    other.delta[((b as usize) << other.tracks) + l]
                };
                let alive = match (ta != NONE, tb != NONE) {
                    (true, true) => true,
                    (true, false) => keep_left,
                    (false, true) => keep_right,
                    (false, false) => false,
                };
                if !alive {
                    continue;
                }
                let key = pack(ta, tb);
                let id = *index.entry(key).or_insert_with(|| {
                    pairs.push((ta, tb));
                    (pairs.len() - 1) as u32
                });
                delta[row + l] = id;
            }
            i += 1;
        }
        Ok(Dfa {
            tracks: self.tracks,
            start: 0,
            accepting,
            delta,
        })
    }

    /// Complement relative to the valid convolutions of this arity.
    pub fn complement_within_validity(&self) -> Dfa {
        Dfa::validity(self.tracks)
            .product(self, ProductMode::Diff)
            .expect("same arity")
    }

    /// Language inclusion `self ⊆ other`.
    pub fn is_subset_of(&self, other: &Dfa) -> Result<bool> {
        Ok(self.product(other, ProductMode::Diff)?.is_empty())
    }

    /// Language equality.
    pub fn same_language(&self, other: &Dfa) -> Result<bool> {
        crate::error::check_arity(self.tracks, other.tracks)?;
        Ok(self.minimize() == other.minimize())
    }

    /// Accepted tuples in length-lexicographic order: first by the length of
    /// the convolution (the longest component), then lexicographically.
    pub fn enumerate(&self, limit: usize) -> Enumeration {
        let finite = self.is_finite();
        let bound = self.state_count() as u64;
        let mut tuples = Vec::new();
        let mut longest = 0u64;
        loop {
            if finite && longest > bound {
                break;
            }
            let mut found = Vec::new();
            for_each_tuple_with_max(self.tracks, longest, &mut |t| {
                if self.accepts_lengths(t) {
                    found.push(t.to_vec());
                }
            });
            for t in found {
                if tuples.len() == limit {
                    return Enumeration {
                        tuples,
                        truncated: true,
                    };
                }
                tuples.push(t);
            }
            if self.tracks == 0 {
                break;
            }
            longest += 1;
        }
        Enumeration {
            tuples,
            truncated: false,
        }
    }

    /// Simple-cycle lengths of the live part. A strongly connected component
    /// in which every state has one internal successor is a single cycle;
    /// that is the only shape produced by languages of valid convolutions,
    /// since a cycle reading two different letters would let a track resume.
    /// Other components fall back to explicit simple-cycle enumeration.
    pub fn loop_profile(&self) -> LoopProfile {
        let live = self.live();
        let live_count = live.iter().filter(|&&l| l).count();
        let n = self.state_count();
        let succ: Vec<Vec<u32>> = (0..n as u32)
            .map(|s| {
                if !live[s as usize] {
                    return Vec::new();
                }
                let mut ts: Vec<u32> = self
                    .edges(s)
                    .map(|(_, t)| t)
                    .filter(|&t| live[t as usize])
                    .collect();
                ts.sort_unstable();
                ts.dedup();
                ts
            })
            .collect();
        let comp = strongly_connected(&succ);
        let comps = comp
            .iter()
            .filter(|&&c| c != NONE)
            .max()
            .map_or(0, |&c| c as usize + 1);
        let mut members: Vec<Vec<u32>> = vec![Vec::new(); comps];
        for s in 0..n {
            if live[s] {
                members[comp[s] as usize].push(s as u32);
            }
        }
        let mut lengths = BTreeSet::new();
        for (c, states) in members.iter().enumerate() {
            let comp = &comp;
            let succ = &succ;
            let inner = move |s: u32| -> Vec<u32> {
                succ[s as usize]
                    .iter()
                    .copied()
                    .filter(|&t| comp[t as usize] == c as u32)
                    .collect()
            };
            let degrees: Vec<usize> = states.iter().map(|&s| inner(s).len()).collect();
            if degrees.iter().all(|&d| d == 0) {
                continue;
            }
            if degrees.iter().all(|&d| d == 1) {
                lengths.insert(states.len() as u64);
                continue;
            }
            simple_cycles(states, &inner, &mut lengths);
        }
        LoopProfile {
            loop_lengths: lengths,
            state_count: live_count,
        }
    }

    pub fn pumping_constant(&self) -> crate::diagram::PumpingConstant {
        self.loop_profile().pumping_constant()
    }
}

/// Tarjan's algorithm, iterative. Returns a component id per state; states
/// without successors lists still get their own component.
fn strongly_connected(succ: &[Vec<u32>]) -> Vec<u32> {
    let n = succ.len();
    let mut index = vec![NONE; n];
    let mut low = vec![0u32; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![NONE; n];
    let mut stack = Vec::new();
    let mut counter = 0u32;
    let mut comps = 0u32;
    for root in 0..n {
        if index[root] != NONE {
            continue;
        }
        let mut work: Vec<(u32, usize)> = vec![(root as u32, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root as u32);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut i)) = work.last_mut() {
            let vu = v as usize;
            if *i < succ[vu].len() {
                let w = succ[vu][*i] as usize;
                *i += 1;
                if index[w] == NONE {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w as u32);
                    on_stack[w] = true;
                    work.push((w as u32, 0));
                } else if on_stack[w] {
                    low[vu] = low[vu].min(index[w]);
                }
                continue;
            }
            work.pop();
            if let Some(&(parent, _)) = work.last() {
                low[parent as usize] = low[parent as usize].min(low[vu]);
            }
            if low[vu] == index[vu] {
                loop {
                    let w = stack.pop().unwrap();
                    on_stack[w as usize] = false;
                    comp[w as usize] = comps;
                    if w == v {
                        break;
                    }
                }
                comps += 1;
            }
        }
    }
    comp
}

/// Lengths of all simple cycles inside one component, found by a DFS rooted
/// at each state that only visits larger states.
fn simple_cycles(states: &[u32], inner: &dyn Fn(u32) -> Vec<u32>, out: &mut BTreeSet<u64>) {
    for &root in states {
        let mut on_path = BTreeSet::from([root]);
        let mut work: Vec<(u32, Vec<u32>, usize)> = vec![(root, inner(root), 0)];
        while let Some((_, ts, i)) = work.last_mut() {
            if *i == ts.len() {
                let (v, _, _) = work.pop().unwrap();
                on_path.remove(&v);
                continue;
            }
            let t = ts[*i];
            *i += 1;
            if t == root {
                out.insert(work.len() as u64);
            } else if t > root && !on_path.contains(&t) {
                on_path.insert(t);
                let next = inner(t);
                work.push((t, next, 0));
            }
        }
    }
}

/// Calls `f` on every `tracks`-tuple whose largest component is `max`, in
/// lexicographic order.
pub(crate) fn for_each_tuple_with_max(tracks: usize, max: u64, f: &mut dyn FnMut(&[u64])) {
    if tracks == 0 {
        if max == 0 {
            f(&[]);
        }
        return;
    }
    let mut t = vec![0u64; tracks];
    loop {
        if t.contains(&max) {
            f(&t);
        }
        let mut i = tracks;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if t[i] < max {
                t[i] += 1;
                for x in t.iter_mut().skip(i + 1) {
                    *x = 0;
                }
                break;
            }
        }
    }
}

/// Result of [`Dfa::enumerate`]; `truncated` is set when the limit cut the
/// listing short.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub tuples: Vec<Vec<u64>>,
    pub truncated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopProfile {
    pub loop_lengths: BTreeSet<u64>,
    pub state_count: usize,
}

impl LoopProfile {
    /// Smallest multiple of the loop lengths' lcm exceeding the state count.
    pub fn pumping_constant(&self) -> crate::diagram::PumpingConstant {
        let lcm = self.loop_lengths.iter().fold(1u64, |acc, &l| lcm(acc, l));
        let d = lcm * (self.state_count as u64 / lcm + 1);
        crate::diagram::PumpingConstant::new(d).expect("positive")
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Loop profile of a general automaton; it must be deterministic.
pub fn loop_profile(a: &UnaryAutomaton) -> Result<LoopProfile> {
    if !a.is_deterministic() {
        return Err(Error::NotDeterministic);
    }
    Ok(determinize(a)?.loop_profile())
}

pub fn pumping_constant(a: &UnaryAutomaton) -> Result<crate::diagram::PumpingConstant> {
    Ok(loop_profile(a)?.pumping_constant())
}
