//! Set-level reference implementations used as test oracles.

use std::collections::BTreeSet;

use rand::Rng;
use unary_fa::fo::{compile, Formula, StructureEnv};
use unary_fa::foundational::{connection_compose, Enforced, FoundationalRelation, Tag};
use unary_fa::Relation;

use super::{random_relation, random_relation_arity};

const VARS: [&str; 3] = ["x", "y", "z"];

/// An environment with binary `R`, `S` and unary `U`.
pub fn random_env(rng: &mut impl Rng) -> StructureEnv {
    StructureEnv::new()
        .with("R", random_relation(rng))
        .with("S", random_relation(rng))
        .with("U", random_relation_arity(rng, 1))
}

fn var(rng: &mut impl Rng) -> &'static str {
    VARS[rng.gen_range(0..VARS.len())]
}

fn random_atom(rng: &mut impl Rng) -> Formula {
    let (a, b) = (var(rng), var(rng));
    match rng.gen_range(0..6) {
        0 | 1 => Formula::atom("R", &[a, b]),
        2 => Formula::atom("S", &[a, b]),
        3 => Formula::atom("U", &[a]),
        4 => Formula::Eq(a.into(), b.into()),
        _ => Formula::LenLt(a.into(), b.into()),
    }
}

/// A random formula over `x, y, z` with at most `quantifiers` nested
/// quantifiers; bound names may shadow free ones.
pub fn random_formula(rng: &mut impl Rng, quantifiers: usize, size: usize) -> Formula {
    if size == 0 {
        return random_atom(rng);
    }
    match rng.gen_range(0..7) {
        0 => random_atom(rng),
        1 => Formula::not(random_formula(rng, quantifiers, size - 1)),
        2 => Formula::and(
            random_formula(rng, quantifiers, size - 1),
            random_formula(rng, quantifiers, size - 1),
        ),
        3 => Formula::or(
            random_formula(rng, quantifiers, size - 1),
            random_formula(rng, quantifiers, size - 1),
        ),
        4 => Formula::implies(
            random_formula(rng, quantifiers, size - 1),
            random_formula(rng, quantifiers, size - 1),
        ),
        _ if quantifiers == 0 => random_atom(rng),
        5 => Formula::exists(var(rng), random_formula(rng, quantifiers - 1, size - 1)),
        _ => Formula::forall(var(rng), random_formula(rng, quantifiers - 1, size - 1)),
    }
}

enum Node {
    Binary(usize, usize, usize),
    Unary(usize, usize),
    Eq(usize, usize),
    Lt(usize, usize),
    Not(Box<Node>),
    And(Box<Node>, Box<Node>),
    Or(Box<Node>, Box<Node>),
    Implies(Box<Node>, Box<Node>),
    Exists(Box<Node>),
    Forall(Box<Node>),
}

/// Tables of the base relations on `0..=bound`.
pub struct Tables {
    names: Vec<String>,
    binary: Vec<Vec<Vec<bool>>>,
    unary: Vec<Vec<bool>>,
    arity: Vec<usize>,
}

impl Tables {
    pub fn new(env: &[(&str, &Relation)], bound: usize) -> Self {
        let mut t = Tables {
            names: Vec::new(),
            binary: Vec::new(),
            unary: Vec::new(),
            arity: Vec::new(),
        };
        for &(name, r) in env {
            t.names.push(name.to_string());
            t.arity.push(r.arity());
            match r.arity() {
                2 => {
                    t.binary.push(r.pair_matrix(bound + 1));
                    t.unary.push(Vec::new());
                }
                1 => {
                    t.unary
                        .push((0..=bound as u64).map(|x| r.accepts(&[x])).collect());
                    t.binary.push(Vec::new());
                }
                n => panic!("unsupported arity {n}"),
            }
        }
        t
    }
}

fn lower(f: &Formula, tables: &Tables, scope: &mut Vec<String>) -> Node {
    let slot = |scope: &Vec<String>, v: &String| scope.iter().rposition(|x| x == v).unwrap();
    match f {
        Formula::Atom(name, args) => {
            let i = tables.names.iter().position(|n| n == name).unwrap();
            assert_eq!(tables.arity[i], args.len());
            if args.len() == 2 {
                Node::Binary(i, slot(scope, &args[0]), slot(scope, &args[1]))
            } else {
                Node::Unary(i, slot(scope, &args[0]))
            }
        }
        Formula::Eq(a, b) => Node::Eq(slot(scope, a), slot(scope, b)),
        Formula::LenLt(a, b) => Node::Lt(slot(scope, a), slot(scope, b)),
        Formula::Not(g) => Node::Not(Box::new(lower(g, tables, scope))),
        Formula::And(a, b) => Node::And(
            Box::new(lower(a, tables, scope)),
            Box::new(lower(b, tables, scope)),
        ),
        Formula::Or(a, b) => Node::Or(
            Box::new(lower(a, tables, scope)),
            Box::new(lower(b, tables, scope)),
        ),
        Formula::Implies(a, b) => Node::Implies(
            Box::new(lower(a, tables, scope)),
            Box::new(lower(b, tables, scope)),
        ),
        Formula::Exists(v, g) | Formula::Forall(v, g) => {
            scope.push(v.clone());
            let body = Box::new(lower(g, tables, scope));
            scope.pop();
            if matches!(f, Formula::Exists(..)) {
                Node::Exists(body)
            } else {
                Node::Forall(body)
            }
        }
    }
}

fn eval(n: &Node, t: &Tables, stack: &mut Vec<usize>, bound: usize) -> bool {
    match n {
        Node::Binary(i, a, b) => t.binary[*i][stack[*a]][stack[*b]],
        Node::Unary(i, a) => t.unary[*i][stack[*a]],
        Node::Eq(a, b) => stack[*a] == stack[*b],
        Node::Lt(a, b) => stack[*a] < stack[*b],
        Node::Not(g) => !eval(g, t, stack, bound),
        Node::And(a, b) => eval(a, t, stack, bound) && eval(b, t, stack, bound),
        Node::Or(a, b) => eval(a, t, stack, bound) || eval(b, t, stack, bound),
        Node::Implies(a, b) => !eval(a, t, stack, bound) || eval(b, t, stack, bound),
        Node::Exists(g) | Node::Forall(g) => {
            let want = matches!(n, Node::Exists(_));
            let mut found = !want;
            for v in 0..=bound {
                stack.push(v);
                let r = eval(g, t, stack, bound);
                stack.pop();
                if r == want {
                    found = want;
                    break;
                }
            }
            found
        }
    }
}

/// Outcome of comparing a compiled formula with brute force.
#[derive(Debug, Default)]
pub struct Agreement {
    pub checked: usize,
    /// Assignments where the two quantifier ranges disagreed.
    pub unstable: usize,
    pub mismatches: Vec<String>,
}

/// Compares `compile(φ)` with brute force on free-variable values in
/// `0..=values`, quantifiers ranging over `0..=small` and `0..=large`.
/// Assignments on which the two ranges disagree are counted, not judged.
pub fn compare_with_brute_force(
    phi: &Formula,
    env_list: &[(&str, &Relation)],
    values: usize,
    small: usize,
    large: usize,
) -> Agreement {
    let mut env = StructureEnv::new();
    for &(name, r) in env_list {
        env.insert(name, r.clone());
    }
    let compiled = compile(phi, &env).unwrap();
    let tables = Tables::new(env_list, large);
    let free = phi.free_vars();
    let mut scope = free.clone();
    let node = lower(phi, &tables, &mut scope);
    let mut out = Agreement::default();
    let k = free.len();
    let total = (values + 1).pow(k as u32);
    for code in 0..total {
        let mut stack: Vec<usize> = (0..k)
            .map(|i| code / (values + 1).pow(i as u32) % (values + 1))
            .collect();
        let a = eval(&node, &tables, &mut stack, small);
        let b = eval(&node, &tables, &mut stack, large);
        if a != b {
            out.unstable += 1;
            continue;
        }
        out.checked += 1;
        let tuple: Vec<u64> = stack.iter().map(|&v| v as u64).collect();
        if compiled.accepts(&tuple) != a {
            out.mismatches
                .push(format!("{phi} at {tuple:?}: brute force says {a}"));
        }
    }
    out
}

/// Shift rules that every accepted pair `(p, q)` with components `≤ 6D`
/// must satisfy, with `D` the pumping constant of `r`. Returns the
/// violations found.
pub fn pumping_violations(r: &Relation) -> Vec<String> {
    let d = r.pumping_constant().get() as usize;
    let top = 6 * d;
    let m = r.pair_matrix(7 * d + 1);
    let mut bad = Vec::new();
    for p in 0..=top {
        for q in 0..=top {
            if !m[p][q] {
                continue;
            }
            let mut need = |x: usize, y: usize, rule: &str| {
                if !m[x][y] {
                    bad.push(format!(
                        "({p},{q}) accepted but ({x},{y}) not [{rule}], D = {d}"
                    ));
                }
            };
            if p.min(q) >= d {
                need(p + d, q + d, "both right");
            }
            if q >= p + 2 * d {
                need(p, q + d, "longer right");
            }
            if q >= p + 3 * d {
                need(p, q - d, "longer left");
            }
            if p >= q + 2 * d {
                need(p + d, q, "longer right");
            }
            if p >= q + 3 * d {
                need(p - d, q, "longer left");
            }
        }
    }
    bad
}

/// Checks every chained pair of connections in a transitive `f` against
/// the composition table.
pub fn table_violations(f: &FoundationalRelation) -> Vec<String> {
    let p = f.profile();
    let (n, nq) = (f.seed_count(), f.qprime_size());
    let mut bad = Vec::new();
    let mut check = |a: Tag, b: Tag, present: &BTreeSet<Tag>, qedge: Option<bool>, at: String| {
        match connection_compose(a, b).unwrap() {
            Enforced::Connections(ts) => {
                if !ts.is_subset(present) {
                    bad.push(format!("{a} then {b} at {at}"));
                }
            }
            Enforced::QPrimeEdge => {
                if qedge != Some(true) {
                    bad.push(format!("{a} then {b} at {at}"));
                }
            }
        }
    };
    for k in 0..n {
        for l in 0..n {
            for m in 0..n {
                for &a in &p.seeds[k][l] {
                    for &b in &p.seeds[l][m] {
                        check(a, b, &p.seeds[k][m], None, format!("P{k} P{l} P{m}"));
                    }
                }
            }
            for q in 0..nq {
                // seed, seed, element
                for &a in &p.seeds[k][l] {
                    for &b in &p.from_seeds[l][q] {
                        check(a, b, &p.from_seeds[k][q], None, format!("P{k} P{l} q{q}"));
                    }
                }
                // element, seed, seed
                for &a in &p.into_seeds[q][k] {
                    for &b in &p.seeds[k][l] {
                        check(a, b, &p.into_seeds[q][l], None, format!("q{q} P{k} P{l}"));
                    }
                }
                // seed, element, seed
                for &a in &p.from_seeds[k][q] {
                    for &b in &p.into_seeds[q][l] {
                        check(a, b, &p.seeds[k][l], None, format!("P{k} q{q} P{l}"));
                    }
                }
            }
        }
        for q in 0..nq {
            for r in 0..nq {
                // element, seed, element
                for &a in &p.into_seeds[q][k] {
                    for &b in &p.from_seeds[k][r] {
                        let edge = p.qprime_edges.contains(&(q, r));
                        check(
                            a,
                            b,
                            &BTreeSet::new(),
                            Some(edge),
                            format!("q{q} P{k} q{r}"),
                        );
                    }
                }
            }
        }
    }
    bad
}
