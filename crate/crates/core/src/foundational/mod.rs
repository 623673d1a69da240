//! Foundational relations: a finite digraph with distinguished five-element
//! seeds whose edges come in all-or-none bundles ([`Tag`]s). Propagating
//! the seeds to infinite rows yields every unary automatic binary relation,
//! and [`extract`] recovers a foundational relation from any of them.
//!
//! Canonical numbering of a propagated relation with `N` elements in `Q'`
//! and `n` seeds: `Q'` element `j` is `j`, and element `i ≥ 1` of seed `k`
//! is `N + n·(i−1) + k`.

mod format;
mod table;

pub use format::{parse_ufr, write_ufr};
pub use table::{connection_compose, Enforced, Sort, Tag};

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::automata::{Dfa, UnaryAutomaton, NONE};
use crate::diagram::PumpingConstant;
use crate::error::{check_arity, Error, Result};
use crate::relation::Relation;

/// A vertex of a foundational relation: a `Q'` element or element
/// `index ∈ 1..=5` of a seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Vertex {
    Q(usize),
    P { seed: usize, index: usize },
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Q(j) => write!(f, "q{j}"),
            Vertex::P { seed, index } => write!(f, "P{seed}.{index}"),
        }
    }
}

fn p(seed: usize, index: usize) -> Vertex {
    Vertex::P { seed, index }
}

/// Connections present between every pair of sorts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConnectionProfile {
    /// `seeds[k][l]`: `S` connections from seed `k` to seed `l`.
    pub seeds: Vec<Vec<BTreeSet<Tag>>>,
    /// `into_seeds[q][k]`: `T` connections from `q` to seed `k`.
    pub into_seeds: Vec<Vec<BTreeSet<Tag>>>,
    /// `from_seeds[k][q]`: `U` connections from seed `k` to `q`.
    pub from_seeds: Vec<Vec<BTreeSet<Tag>>>,
    pub qprime_edges: BTreeSet<(usize, usize)>,
}

/// A validated foundational relation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FoundationalRelation {
    qprime: usize,
    seeds: usize,
    adj: Vec<bool>,
    profile: ConnectionProfile,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Property {
    Reflexive,
    Symmetric,
    Antisymmetric,
    Transitive,
}

impl Property {
    pub const ALL: [Property; 4] = [
        Property::Reflexive,
        Property::Symmetric,
        Property::Antisymmetric,
        Property::Transitive,
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeedKind {
    Antichain,
    AscendingChain,
    DescendingChain,
    StronglyConnected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TournamentKind {
    CompleteAscending,
    CompleteDescending,
    NearCompleteAscending,
    NearCompleteDescending,
}

impl FoundationalRelation {
    /// Validates an edge set over `qprime` elements and `seeds` seeds.
    pub fn new(
        qprime: usize,
        seeds: usize,
        edges: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> Result<Self> {
        let size = qprime + 5 * seeds;
        let mut adj = vec![false; size * size];
        let index = |v: Vertex| -> Result<usize> {
            match v {
                Vertex::Q(j) if j < qprime => Ok(j),
                Vertex::P { seed, index } if seed < seeds && (1..=5).contains(&index) => {
                    Ok(qprime + 5 * seed + index - 1)
                }
                _ => Err(Error::ValidationFailed(format!("vertex {v} out of range"))),
            }
        };
        for (a, b) in edges {
            adj[index(a)? * size + index(b)?] = true;
        }
        let mut f = FoundationalRelation {
            qprime,
            seeds,
            adj,
            profile: ConnectionProfile {
                seeds: Vec::new(),
                into_seeds: Vec::new(),
                from_seeds: Vec::new(),
                qprime_edges: BTreeSet::new(),
            },
        };
        f.profile = f.derive_profile()?;
        Ok(f)
    }

    /// Validates a relation on `{0..size}` with seeds given as element
    /// 5-tuples; the remaining elements form `Q'` in increasing order.
    pub fn from_raw(size: usize, seeds: &[[usize; 5]], edges: &[(usize, usize)]) -> Result<Self> {
        let mut role: Vec<Option<Vertex>> = vec![None; size];
        for (k, seed) in seeds.iter().enumerate() {
            for (i, &e) in seed.iter().enumerate() {
                if e >= size {
                    return Err(Error::ValidationFailed(format!("element {e} out of range")));
                }
                if role[e].is_some() {
                    return Err(Error::SeedOverlap(e.to_string()));
                }
                role[e] = Some(p(k, i + 1));
            }
        }
        let mut next = 0;
        for r in role.iter_mut() {
            if r.is_none() {
                *r = Some(Vertex::Q(next));
                next += 1;
            }
        }
        let role: Vec<Vertex> = role.into_iter().map(Option::unwrap).collect();
        let mut mapped = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a >= size || b >= size {
                return Err(Error::ValidationFailed(format!(
                    "edge ({a},{b}) out of range"
                )));
            }
            mapped.push((role[a], role[b]));
        }
        FoundationalRelation::new(next, seeds.len(), mapped)
    }

    /// Builds the relation from its connections and `Q'` edges.
    pub fn from_connections(
        qprime: usize,
        seeds: usize,
        connections: &[(Tag, usize, usize)],
        qprime_edges: &[(usize, usize)],
    ) -> Result<Self> {
        let mut edges: Vec<(Vertex, Vertex)> = qprime_edges
            .iter()
            .map(|&(a, b)| (Vertex::Q(a), Vertex::Q(b)))
            .collect();
        for &(tag, src, dst) in connections {
            edges.extend(connection_edges(tag, src, dst));
        }
        FoundationalRelation::new(qprime, seeds, edges)
    }

    pub fn qprime_size(&self) -> usize {
        self.qprime
    }

    pub fn seed_count(&self) -> usize {
        self.seeds
    }

    pub fn vertex_count(&self) -> usize {
        self.qprime + 5 * self.seeds
    }

    pub fn profile(&self) -> &ConnectionProfile {
        &self.profile
    }

    fn index(&self, v: Vertex) -> usize {
        match v {
            Vertex::Q(j) => j,
            Vertex::P { seed, index } => self.qprime + 5 * seed + index - 1,
        }
    }

    /// Vertices in index order: `Q'` first, then the seeds.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.qprime)
            .map(Vertex::Q)
            .chain((0..self.seeds).flat_map(|k| (1..=5).map(move |i| p(k, i))))
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        self.adj[self.index(a) * self.vertex_count() + self.index(b)]
    }

    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let vs: Vec<Vertex> = self.vertices().collect();
        let mut out = Vec::new();
        for &a in &vs {
            for &b in &vs {
                if self.has_edge(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Checks every all-or-none condition and records the connections.
    fn derive_profile(&self) -> Result<ConnectionProfile> {
        let (n, nq) = (self.seeds, self.qprime);
        let mut profile = ConnectionProfile {
            seeds: vec![vec![BTreeSet::new(); n]; n],
            into_seeds: vec![vec![BTreeSet::new(); n]; nq],
            from_seeds: vec![vec![BTreeSet::new(); nq]; n],
            qprime_edges: BTreeSet::new(),
        };
        for k in 0..n {
            for l in 0..n {
                for tag in Tag::SEED_TO_SEED {
                    if self.bundle(tag, k, l)? {
                        profile.seeds[k][l].insert(tag);
                    }
                }
            }
        }
        for q in 0..nq {
            for k in 0..n {
                for tag in [Tag::TPlusInf, Tag::T0] {
                    if self.bundle(tag, q, k)? {
                        profile.into_seeds[q][k].insert(tag);
                    }
                }
                for tag in [Tag::UMinusInf, Tag::U0] {
                    if self.bundle(tag, k, q)? {
                        profile.from_seeds[k][q].insert(tag);
                    }
                }
            }
        }
        for a in 0..nq {
            for b in 0..nq {
                if self.has_edge(Vertex::Q(a), Vertex::Q(b)) {
                    profile.qprime_edges.insert((a, b));
                }
            }
        }
        Ok(profile)
    }

    /// Whether the whole bundle is present; an error if only part of it is.
    fn bundle(&self, tag: Tag, src: usize, dst: usize) -> Result<bool> {
        let edges = connection_edges(tag, src, dst);
        let present: Vec<bool> = edges.iter().map(|&(a, b)| self.has_edge(a, b)).collect();
        if present.iter().all(|&x| x) {
            return Ok(true);
        }
        if let Some(i) = present.iter().position(|&x| x) {
            let name = |v: Vertex| match v {
                Vertex::Q(j) => format!("q{j}"),
                Vertex::P { seed, .. } => format!("P{seed}"),
            };
            let (a, b) = edges[i];
            return Err(Error::ConnectionViolation {
                pattern: tag.name().to_string(),
                source_set: name(edges[0].0),
                target_set: name(edges[0].1),
                witness: format!("{a}->{b}"),
            });
        }
        Ok(false)
    }

    /// Every `(tag, src, dst)` connection present, in a fixed order.
    pub fn connections(&self) -> Vec<(Tag, usize, usize)> {
        let mut out = Vec::new();
        for (k, row) in self.profile.seeds.iter().enumerate() {
            for (l, tags) in row.iter().enumerate() {
                out.extend(tags.iter().map(|&t| (t, k, l)));
            }
        }
        for (q, row) in self.profile.into_seeds.iter().enumerate() {
            for (k, tags) in row.iter().enumerate() {
                out.extend(tags.iter().map(|&t| (t, q, k)));
            }
        }
        for (k, row) in self.profile.from_seeds.iter().enumerate() {
            for (q, tags) in row.iter().enumerate() {
                out.extend(tags.iter().map(|&t| (t, k, q)));
            }
        }
        out
    }

    /// Membership in the propagated relation, on canonical element numbers.
    pub fn propagated_edge(&self, x: u64, y: u64) -> bool {
        let (nq, n) = (self.qprime as u64, self.seeds as u64);
        let decode = |v: u64| -> Option<(Option<usize>, usize, u64)> {
            if v < nq {
                Some((None, v as usize, 0))
            } else if n == 0 {
                None
            } else {
                let r = v - nq;
                Some((Some((r % n) as usize), 0, r / n + 1))
            }
        };
        let (Some(a), Some(b)) = (decode(x), decode(y)) else {
            return false;
        };
        // every propagated edge is witnessed by a seed edge with small indices
        let (va, vb) = match (a, b) {
            ((None, qa, _), (None, qb, _)) => (Vertex::Q(qa), Vertex::Q(qb)),
            ((None, q, _), (Some(k), _, i)) => (Vertex::Q(q), p(k, i.min(2) as usize)),
            ((Some(k), _, i), (None, q, _)) => (p(k, i.min(2) as usize), Vertex::Q(q)),
            ((Some(k), _, i), (Some(l), _, j)) => {
                let (si, sj) = match Tag::for_difference(j as i64 - i as i64) {
                    Tag::SMinusInf => (3, 1),
                    Tag::SMinus1 => (2, 1),
                    Tag::S0 => (1, 1),
                    Tag::SPlus1 => (1, 2),
                    _ => (1, 3),
                };
                (p(k, si), p(l, sj))
            }
        };
        self.has_edge(va, vb)
    }

    /// Property of the finite relation; by preservation it is also the
    /// property of the propagated relation.
    pub fn check_property(&self, property: Property) -> bool {
        let size = self.vertex_count();
        let e = |a: usize, b: usize| self.adj[a * size + b];
        match property {
            Property::Reflexive => (0..size).all(|a| e(a, a)),
            Property::Symmetric => (0..size).all(|a| (0..size).all(|b| !e(a, b) || e(b, a))),
            Property::Antisymmetric => {
                (0..size).all(|a| (0..size).all(|b| a == b || !(e(a, b) && e(b, a))))
            }
            Property::Transitive => (0..size)
                .all(|a| (0..size).all(|b| !e(a, b) || (0..size).all(|c| !e(b, c) || e(a, c)))),
        }
    }

    pub fn is_quasiorder(&self) -> bool {
        self.check_property(Property::Reflexive) && self.check_property(Property::Transitive)
    }

    pub fn is_tournament(&self) -> bool {
        let size = self.vertex_count();
        let e = |a: usize, b: usize| self.adj[a * size + b];
        (0..size).all(|a| !e(a, a) && (0..a).all(|b| e(a, b) != e(b, a)))
    }

    /// Shape of seed `k` in a quasi-order, read off its self-connections.
    pub fn classify_seed(&self, k: usize) -> Result<SeedKind> {
        if !self.is_quasiorder() {
            return Err(Error::NotAQuasiOrder);
        }
        let own = &self.profile.seeds[k][k];
        let up = (own.contains(&Tag::SPlus1), own.contains(&Tag::SPlusInf));
        let down = (own.contains(&Tag::SMinus1), own.contains(&Tag::SMinusInf));
        if up.0 != up.1 || down.0 != down.1 {
            return Err(Error::MixedSelfConnection(k));
        }
        Ok(match (up.0, down.0) {
            (false, false) => SeedKind::Antichain,
            (true, false) => SeedKind::AscendingChain,
            (false, true) => SeedKind::DescendingChain,
            (true, true) => SeedKind::StronglyConnected,
        })
    }

    /// Shape of seed `k` in a tournament.
    pub fn classify_tournament_seed(&self, k: usize) -> Result<TournamentKind> {
        if !self.is_tournament() {
            return Err(Error::NotATournament);
        }
        let own = &self.profile.seeds[k][k];
        let far_up = own.contains(&Tag::SPlusInf);
        let near_up = own.contains(&Tag::SPlus1);
        Ok(match (far_up, near_up) {
            (true, true) => TournamentKind::CompleteAscending,
            (false, false) => TournamentKind::CompleteDescending,
            (true, false) => TournamentKind::NearCompleteAscending,
            (false, true) => TournamentKind::NearCompleteDescending,
        })
    }
}

/// The edges of one connection.
pub fn connection_edges(tag: Tag, src: usize, dst: usize) -> Vec<(Vertex, Vertex)> {
    tag.pattern()
        .iter()
        .map(|&(i, j)| match tag.sorts() {
            (Sort::Seed, Sort::Seed) => (p(src, i), p(dst, j)),
            (Sort::Element, _) => (Vertex::Q(src), p(dst, j)),
            (_, Sort::Element) => (p(src, i), Vertex::Q(dst)),
        })
        .collect()
}

/// The relation on ℕ obtained by propagating `f`, in canonical numbering.
pub fn propagate(f: &FoundationalRelation) -> Relation {
    let nq = f.qprime as u64;
    let n = f.seeds as u64;
    // lengths below `threshold` are tracked exactly, the rest modulo n
    let threshold = nq + n;
    let period = n.max(1);
    let cap = threshold.max(3 * n) + 1;
    periodic_relation(threshold, period, cap, |x, y| f.propagated_edge(x, y))
}

/// Builds the automaton of a binary relation whose membership depends only
/// on each component's class (exact below `threshold`, residue modulo
/// `period` above it) and on their difference capped at `cap`. `member` is
/// evaluated on one representative pair per state.
fn periodic_relation(
    threshold: u64,
    period: u64,
    cap: u64,
    member: impl Fn(u64, u64) -> bool,
) -> Relation {
    assert!(cap >= threshold && cap > 0);
    let next = |c: u64| {
        if c + 1 < threshold + period {
            c + 1
        } else {
            threshold
        }
    };
    let class_of = |v: u64| {
        if v < threshold {
            v
        } else {
            threshold + (v - threshold) % period
        }
    };
    // the smallest value ≥ lo in class c
    let lift = |c: u64, lo: u64| {
        if c < threshold {
            c
        } else {
            let mut v = lo.max(c);
            while class_of(v) != c {
                v += 1;
            }
            v
        }
    };

    #[derive(Clone, Copy, PartialEq, Eq, Hash)]
    enum St {
        Eq(u64),
        // (class of shorter, class of longer, capped difference, longer is second)
        Apart(u64, u64, u64, bool),
    }

    let accepting = |s: St| -> bool {
        match s {
            St::Eq(c) => member(c, c),
            St::Apart(cs, cl, d, second_longer) => {
                let short = cs;
                let long = if d < cap {
                    short + d
                } else {
                    lift(cl, short + cap)
                };
                if second_longer {
                    member(short, long)
                } else {
                    member(long, short)
                }
            }
        }
    };

    let mut ids: HashMap<St, u32> = HashMap::new();
    let mut states: Vec<St> = vec![St::Eq(0)];
    ids.insert(St::Eq(0), 0);
    let mut delta: Vec<u32> = Vec::new();
    let mut acc = Vec::new();
    let mut queue = VecDeque::from([0u32]);
    while let Some(id) = queue.pop_front() {
        let s = states[id as usize];
        let row = id as usize * 4;
        if delta.len() < row + 4 {
            delta.resize(row + 4, NONE);
        }
        let moves: Vec<(u32, St)> = match s {
            St::Eq(c) => vec![
                (0b11, St::Eq(next(c))),
                (0b01, St::Apart(c, next(c), 1, true)),
                (0b10, St::Apart(c, next(c), 1, false)),
            ],
            St::Apart(cs, cl, d, second) => {
                let letter = if second { 0b01 } else { 0b10 };
                vec![(letter, St::Apart(cs, next(cl), (d + 1).min(cap), second))]
            }
        };
        for (letter, t) in moves {
            let tid = *ids.entry(t).or_insert_with(|| {
                states.push(t);
                queue.push_back(states.len() as u32 - 1);
                states.len() as u32 - 1
            });
            delta[row + letter as usize] = tid;
        }
    }
    for &s in &states {
        acc.push(accepting(s));
    }
    delta.resize(states.len() * 4, NONE);
    Relation::from_dfa(&Dfa::from_parts(2, 0, acc, delta))
}

/// Reads a foundational relation off the diagram of `r`: `Q'` is column 0
/// and seed `k` is row `k` in columns 1 to 5. A relation with finitely many
/// pairs yields the seedless form on `0..=max element`.
pub fn extract(r: &Relation) -> Result<(FoundationalRelation, PumpingConstant)> {
    check_arity(2, r.arity())?;
    let d = r.pumping_constant();
    if r.is_finite() {
        let pairs = r.enumerate(usize::MAX).tuples;
        let size = pairs.iter().flatten().max().map_or(0, |&m| m as usize + 1);
        let edges: Vec<(Vertex, Vertex)> = pairs
            .iter()
            .map(|t| (Vertex::Q(t[0] as usize), Vertex::Q(t[1] as usize)))
            .collect();
        return Ok((FoundationalRelation::new(size, 0, edges)?, d));
    }
    let dd = d.get() as usize;
    let f = extract_with_layout(r, dd, dd).map_err(|e| match e {
        Error::ConnectionViolation { .. } => Error::ValidationFailed(e.to_string()),
        other => other,
    })?;
    Ok((f, d))
}

/// Reads the foundational relation of `r` assuming the canonical numbering
/// with `qprime` elements in `Q'` and `seeds` seeds.
pub fn extract_with_layout(
    r: &Relation,
    qprime: usize,
    seeds: usize,
) -> Result<FoundationalRelation> {
    check_arity(2, r.arity())?;
    let element = |v: Vertex| -> usize {
        match v {
            Vertex::Q(j) => j,
            Vertex::P { seed, index } => qprime + seeds * (index - 1) + seed,
        }
    };
    let vertices: Vec<Vertex> = (0..qprime)
        .map(Vertex::Q)
        .chain((0..seeds).flat_map(|k| (1..=5).map(move |i| p(k, i))))
        .collect();
    let bound = qprime + 5 * seeds;
    let m = r.pair_matrix(bound);
    let mut edges = Vec::new();
    for &a in &vertices {
        for &b in &vertices {
            if m[element(a)][element(b)] {
                edges.push((a, b));
            }
        }
    }
    FoundationalRelation::new(qprime, seeds, edges)
}

/// Renumbers `r` from diagram coordinates with `d` rows (column 0 being
/// `Q'`) to the canonical numbering with `qprime` elements in `Q'` and `d`
/// seeds: `x·d + y ↦ qprime + d·(x−1) + y` for `x ≥ 1`, and `j ↦ j` for
/// `j < qprime`. Column-0 elements from `qprime` on must be isolated.
/// Relations with finitely many pairs are left alone when every element is
/// below `qprime`.
pub fn reencode(r: &Relation, d: PumpingConstant, qprime: usize) -> Result<Relation> {
    check_arity(2, r.arity())?;
    let dd = d.get() as usize;
    if r.is_finite() {
        let max = r
            .enumerate(usize::MAX)
            .tuples
            .iter()
            .flatten()
            .max()
            .copied();
        return match max {
            Some(m) if m as usize >= qprime => Err(Error::BadEncoding(format!(
                "element {m} lies outside Q' of size {qprime}"
            ))),
            _ => Ok(r.clone()),
        };
    }
    if qprime > dd {
        return Err(Error::BadEncoding(format!(
            "Q' of size {qprime} exceeds the {dd} elements of column 0"
        )));
    }
    let gap = dd - qprime;
    if gap == 0 {
        return Ok(r.clone());
    }
    let column_zero: Vec<Vec<u64>> = (qprime..dd).map(|j| vec![j as u64]).collect();
    let column_zero = Relation::finite(1, &column_zero);
    if !r.restrict(0, &column_zero)?.is_empty() || !r.restrict(1, &column_zero)?.is_empty() {
        return Err(Error::BadEncoding(
            "column-0 elements beyond Q' carry edges".to_string(),
        ));
    }
    // sh = {(m, m) : m < qprime} ∪ {(m, m − gap) : m ≥ d}, read as (11)^m
    // for the first part and (11)^{≥qprime} (1_)^gap for the second
    let mut a = UnaryAutomaton::new(2, qprime + 1, 0);
    for s in 0..qprime {
        a.set_accepting(s, true);
        a.add_transition(s, 0b11, s + 1);
    }
    a.add_transition(qprime, 0b11, qprime);
    let mut tail = qprime;
    for _ in 0..gap {
        let next = a.add_state();
        a.add_transition(tail, 0b10, next);
        tail = next;
    }
    a.set_accepting(tail, true);
    let sh = Relation::from_automaton(&a)?;
    sh.converse()?.compose(r)?.compose(&sh)
}
