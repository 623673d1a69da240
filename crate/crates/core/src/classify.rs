//! Order and tournament decompositions, component reports and orbit
//! classification of maps.

use std::fmt;

use crate::builders::class_representatives;
use crate::closure::{equivalence_closure, plus_closure};
use crate::error::{check_arity, Error, Result};
use crate::fo::{compile_with_vars, infinite_class, parse_formula, predicates, StructureEnv};
use crate::foundational::{extract, SeedKind, TournamentKind};
use crate::relation::Relation;

pub const DEFAULT_MAX_BOUND: usize = 16;

/// Elements listed per infinite component in a [`ComponentsReport`].
const SAMPLE: usize = 5;

pub fn is_quasiorder(r: &Relation) -> Result<bool> {
    check_arity(2, r.arity())?;
    Ok(predicates::reflexive(r)? && predicates::transitive(r)?)
}

pub fn is_partial_order(r: &Relation) -> Result<bool> {
    Ok(is_quasiorder(r)? && predicates::antisymmetric(r)?)
}

/// Irreflexive, and exactly one direction between distinct elements.
pub fn is_tournament(r: &Relation) -> Result<bool> {
    check_arity(2, r.arity())?;
    let env = StructureEnv::new().with("R", r.clone());
    Ok(predicates::irreflexive(r)?
        && crate::fo::holds("A x. A y. (!x = y -> (R(x,y) | R(y,x)))", &env)?
        && predicates::antisymmetric(r)?)
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OrderDecomposition {
    pub pumping_constant: u64,
    pub trivial_count: usize,
    pub ascending_chains: usize,
    pub descending_chains: usize,
    pub antichains: usize,
    pub strongly_connected: usize,
}

/// Splits a quasi-order into finitely many single elements and infinite
/// parts, one per seed of its foundational form.
pub fn decompose_order(r: &Relation) -> Result<OrderDecomposition> {
    if !is_quasiorder(r)? {
        return Err(Error::NotAQuasiOrder);
    }
    let (f, d) = extract(r)?;
    let mut out = OrderDecomposition {
        pumping_constant: d.get(),
        trivial_count: f.qprime_size(),
        ..Default::default()
    };
    for k in 0..f.seed_count() {
        match f.classify_seed(k)? {
            SeedKind::Antichain => out.antichains += 1,
            SeedKind::AscendingChain => out.ascending_chains += 1,
            SeedKind::DescendingChain => out.descending_chains += 1,
            SeedKind::StronglyConnected => out.strongly_connected += 1,
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TournamentDecomposition {
    pub pumping_constant: u64,
    pub trivial_count: usize,
    pub complete_ascending: usize,
    pub complete_descending: usize,
    pub near_complete_ascending: usize,
    pub near_complete_descending: usize,
}

pub fn decompose_tournament(r: &Relation) -> Result<TournamentDecomposition> {
    if !is_tournament(r)? {
        return Err(Error::NotATournament);
    }
    let (f, d) = extract(r)?;
    let mut out = TournamentDecomposition {
        pumping_constant: d.get(),
        trivial_count: f.qprime_size(),
        ..Default::default()
    };
    for k in 0..f.seed_count() {
        match f.classify_tournament_seed(k)? {
            TournamentKind::CompleteAscending => out.complete_ascending += 1,
            TournamentKind::CompleteDescending => out.complete_descending += 1,
            TournamentKind::NearCompleteAscending => out.near_complete_ascending += 1,
            TournamentKind::NearCompleteDescending => out.near_complete_descending += 1,
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentsReport {
    pub infinite_component_count: usize,
    pub finite_size_bound: usize,
    /// Minimal representative and the first few elements of each infinite
    /// component.
    pub samples: Vec<(u64, Vec<u64>)>,
}

/// The partition into classes of an equivalence `q`, split into infinite
/// classes (by minimal representative) and the bound on finite ones.
struct Partition {
    q: Relation,
    infinite_reps: Vec<u64>,
    finite_size_bound: usize,
}

fn partition(q: Relation, max_bound: usize) -> Result<Partition> {
    let infinite = infinite_class(&q)?;
    let reps = class_representatives(&q)?.intersection(&infinite)?;
    // the representatives of infinite classes form a finite set
    let infinite_reps = reps
        .enumerate(usize::MAX)
        .tuples
        .into_iter()
        .map(|t| t[0])
        .collect();
    let finite_size_bound = finite_class_bound(&q, &infinite, max_bound)?;
    Ok(Partition {
        q,
        infinite_reps,
        finite_size_bound,
    })
}

/// The smallest `k` such that every finite class has at most `k` elements.
///
/// `Above_j(x, y)` holds when `y` is in the class of `x` and at least `j`
/// class members are shorter than `y`; a class has more than `k` elements
/// exactly when some `Above_k(x, ·)` is nonempty. Each layer is one formula
/// in three variables.
fn finite_class_bound(q: &Relation, infinite: &Relation, max_bound: usize) -> Result<usize> {
    let finite_part = q.restrict(0, &infinite.complement())?;
    let step = parse_formula("Q(x,y) & E z. (A(x,z) & len_lt(z,y))").expect("fixed formula");
    let mut above = finite_part.clone();
    for k in 0..=max_bound {
        if above.is_empty() {
            return Ok(k);
        }
        let env = StructureEnv::new()
            .with("Q", finite_part.clone())
            .with("A", above);
        above = compile_with_vars(&step, &env, &["x", "y"])?;
    }
    Err(Error::BoundSearchBudgetExceeded(max_bound))
}

pub fn components_report(r: &Relation) -> Result<ComponentsReport> {
    components_report_with_budget(r, DEFAULT_MAX_BOUND)
}

pub fn components_report_with_budget(r: &Relation, max_bound: usize) -> Result<ComponentsReport> {
    check_arity(2, r.arity())?;
    let p = partition(equivalence_closure(r)?, max_bound)?;
    let mut samples = Vec::new();
    for &rep in &p.infinite_reps {
        let one = Relation::finite(1, &[vec![rep]]);
        let members = p.q.restrict(0, &one)?.project(0)?;
        let first = members
            .enumerate(SAMPLE)
            .tuples
            .into_iter()
            .map(|t| t[0])
            .collect();
        samples.push((rep, first));
    }
    Ok(ComponentsReport {
        infinite_component_count: p.infinite_reps.len(),
        finite_size_bound: p.finite_size_bound,
        samples,
    })
}

/// Shape of an infinite orbit of an injective map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathType {
    Outward,
    Inward,
    BiInfinite,
    NotApplicable,
}

impl fmt::Display for PathType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PathType::Outward => "outward",
            PathType::Inward => "inward",
            PathType::BiInfinite => "bi_infinite",
            PathType::NotApplicable => "n/a",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitTags {
    pub representative: u64,
    pub contains_cycle: bool,
    pub has_undefined_point: bool,
    pub has_infinite_indegree_vertex: bool,
    pub path_type: PathType,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapOrbitReport {
    pub is_partial_map: bool,
    pub is_total: bool,
    pub is_injective: bool,
    pub is_surjective: bool,
    pub finite_orbit_size_bound: usize,
    pub infinite_orbit_count: usize,
    pub orbits: Vec<OrbitTags>,
}

pub fn classify_map(r: &Relation) -> Result<MapOrbitReport> {
    classify_map_with_budget(r, DEFAULT_MAX_BOUND)
}

pub fn classify_map_with_budget(r: &Relation, max_bound: usize) -> Result<MapOrbitReport> {
    check_arity(2, r.arity())?;
    if !predicates::functional(r)? {
        return Err(Error::NotAPartialMap);
    }
    let is_injective = predicates::injective(r)?;
    let p = partition(equivalence_closure(r)?, max_bound)?;
    let env = StructureEnv::new()
        .with("R", r.clone())
        .with("Q", p.q.clone())
        .with("P", plus_closure(r)?);
    // each tag as a unary relation in the orbit representative `o`
    let tag =
        |text: &str| -> Result<Relation> { compile_with_vars(&parse_formula(text)?, &env, &["o"]) };
    let cycle = tag("E y. (Q(y,o) & P(y,y))")?;
    let undefined = tag("E y. (Q(y,o) & !E z. R(y,z))")?;
    let unreached = tag("E y. (Q(y,o) & !E z. R(z,y))")?;
    let wide = tag("E y. (Q(y,o) & A u. E w. (R(w,y) & len_lt(u,w)))")?;
    let orbits = p
        .infinite_reps
        .iter()
        .map(|&o| {
            let contains_cycle = cycle.accepts(&[o]);
            let has_undefined_point = undefined.accepts(&[o]);
            let path_type = if !is_injective || contains_cycle {
                PathType::NotApplicable
            } else if has_undefined_point {
                PathType::Inward
            } else if unreached.accepts(&[o]) {
                PathType::Outward
            } else {
                PathType::BiInfinite
            };
            OrbitTags {
                representative: o,
                contains_cycle,
                has_undefined_point,
                has_infinite_indegree_vertex: wide.accepts(&[o]),
                path_type,
            }
        })
        .collect();
    Ok(MapOrbitReport {
        is_partial_map: true,
        is_total: predicates::total(r)?,
        is_injective,
        is_surjective: predicates::surjective(r)?,
        finite_orbit_size_bound: p.finite_size_bound,
        infinite_orbit_count: p.infinite_reps.len(),
        orbits,
    })
}
