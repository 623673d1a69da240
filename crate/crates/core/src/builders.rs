//! Constructions that keep a structure unary automatic: disjoint unions,
//! infinitely many copies of a finite structure, quotients, attachment, and
//! the two periodic tree species built from templates.

use std::collections::BTreeMap;

use crate::automata::UnaryAutomaton;
use crate::closure::equivalence_closure;
use crate::error::{Error, Result};
use crate::fo::{compile, parse_formula, predicates, StructureEnv};
use crate::relation::Relation;

/// A finite structure on `{0..size}` with named binary relations.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FiniteStructure {
    size: usize,
    relations: BTreeMap<String, Vec<(usize, usize)>>,
}

impl FiniteStructure {
    pub fn new(size: usize) -> Self {
        FiniteStructure {
            size,
            relations: BTreeMap::new(),
        }
    }

    pub fn with_relation(mut self, name: &str, edges: &[(usize, usize)]) -> Result<Self> {
        self.add_relation(name, edges)?;
        Ok(self)
    }

    pub fn add_relation(&mut self, name: &str, edges: &[(usize, usize)]) -> Result<()> {
        if let Some(&(a, b)) = edges
            .iter()
            .find(|&&(a, b)| a >= self.size || b >= self.size)
        {
            return Err(Error::ValidationFailed(format!(
                "edge ({a},{b}) outside a structure of size {}",
                self.size
            )));
        }
        self.relations.insert(name.to_string(), edges.to_vec());
        Ok(())
    }

    /// Reads `vertex N` and `edge A B` lines into a structure with the
    /// single relation `E`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut size = None;
        let mut edges = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let bad = |m: String| Error::Format {
                line: i + 1,
                message: m,
            };
            let content = raw.split('#').next().unwrap_or("");
            let words: Vec<&str> = content.split_whitespace().collect();
            let Some(&keyword) = words.first() else {
                continue;
            };
            let nums: Vec<usize> = words[1..]
                .iter()
                .map(|w| w.parse().map_err(|_| bad(format!("bad number `{w}`"))))
                .collect::<Result<_>>()?;
            match (keyword, nums.as_slice()) {
                ("vertex", &[n]) => size = Some(n),
                ("edge", &[a, b]) => edges.push((a, b)),
                _ => return Err(bad(format!("malformed `{}`", content.trim()))),
            }
        }
        let size = size.ok_or(Error::Format {
            line: 0,
            message: "missing `vertex`".to_string(),
        })?;
        FiniteStructure::new(size).with_relation("E", &edges)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn relation(&self, name: &str) -> Option<&[(usize, usize)]> {
        self.relations.get(name).map(Vec::as_slice)
    }
}

/// Interleaves the two domains: element `i` of `r1` becomes `2i`, element
/// `i` of `r2` becomes `2i + 1`.
pub fn disjoint_union(r1: &Relation, r2: &Relation) -> Result<Relation> {
    crate::error::check_arity(r1.arity(), r2.arity())?;
    r1.affine_image(2, 0).union(&r2.affine_image(2, 1))
}

/// `{(n·i + a, n·i + b) : (a, b) ∈ σ, i ∈ ℕ}` for the relation `name` of a
/// structure of size `n`.
pub fn omega_copies(s: &FiniteStructure, name: &str) -> Result<Relation> {
    let edges = s
        .relation(name)
        .ok_or_else(|| Error::UnknownRelation(name.to_string()))?;
    let n = s.size();
    if n == 0 || edges.is_empty() {
        return Ok(Relation::empty(2));
    }
    let tuples: Vec<Vec<u64>> = edges
        .iter()
        .map(|&(a, b)| vec![a as u64, b as u64])
        .collect();
    let base = Relation::finite(2, &tuples);
    // a cycle of n all-active letters in front of the finite automaton
    let mut a = UnaryAutomaton::new(2, n, 0);
    for s in 0..n {
        a.add_transition(s, 0b11, (s + 1) % n);
    }
    let inner = base.to_automaton();
    let offset = a.state_count();
    for _ in 0..inner.state_count() {
        a.add_state();
    }
    for s in 0..inner.state_count() {
        a.set_accepting(offset + s, inner.is_accepting(s));
        for &(l, t) in inner.transitions(s) {
            a.add_transition(offset + s, l, offset + t);
        }
    }
    a.add_epsilon(0, offset + inner.start());
    Relation::from_automaton(&a)
}

/// Elements of minimal length in their class under the equivalence `q`.
pub fn class_representatives(q: &Relation) -> Result<Relation> {
    let env = StructureEnv::new().with("Q", q.clone());
    compile(
        &parse_formula("!E y. (Q(x,y) & len_lt(y,x))").expect("fixed formula"),
        &env,
    )
}

/// `Q ∘ R ∘ Q` restricted to class representatives; representatives keep
/// their numbers.
pub fn quotient(r: &Relation, q: &Relation) -> Result<Relation> {
    crate::error::check_arity(2, r.arity())?;
    crate::error::check_arity(2, q.arity())?;
    if !predicates::equivalence(q)? {
        return Err(Error::NotEquivalence);
    }
    let reps = class_representatives(q)?;
    q.compose(r)?
        .compose(q)?
        .restrict(0, &reps)?
        .restrict(1, &reps)
}

/// Glues vertex `t` of `t_rel` onto vertex `g` of `g_rel`. Both graphs are
/// interleaved as in [`disjoint_union`] before the two vertices are merged.
pub fn attach(g_rel: &Relation, g: u64, t_rel: &Relation, t: u64) -> Result<Relation> {
    crate::error::check_arity(2, g_rel.arity())?;
    crate::error::check_arity(2, t_rel.arity())?;
    let union = disjoint_union(g_rel, t_rel)?;
    let glue = Relation::finite(2, &[vec![2 * g, 2 * t + 1]]);
    quotient(&union, &equivalence_closure(&glue)?)
}

/// A finite directed tree with two distinguished vertices, `t0` a leaf.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Template {
    size: usize,
    edges: Vec<(usize, usize)>,
    t0: usize,
    t1: usize,
}

impl Template {
    pub fn new(size: usize, edges: Vec<(usize, usize)>, t0: usize, t1: usize) -> Result<Self> {
        let bad = |m: String| Err(Error::BadTemplate(m));
        if let Some(&(a, b)) = edges.iter().find(|&&(a, b)| a >= size || b >= size) {
            return bad(format!("edge ({a},{b}) out of range"));
        }
        if t0 >= size || t1 >= size {
            return bad("distinguished vertex out of range".to_string());
        }
        if size == 0 || edges.len() != size - 1 {
            return bad(format!(
                "a tree on {size} vertices has {} edges",
                size.max(1) - 1
            ));
        }
        // union-find over the undirected edges
        let mut parent: Vec<usize> = (0..size).collect();
        fn root(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(a, b) in &edges {
            let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
            if ra == rb {
                return bad(format!("edge ({a},{b}) closes a cycle"));
            }
            parent[ra] = rb;
        }
        let degree = edges.iter().filter(|&&(a, b)| a == t0 || b == t0).count();
        if size > 1 && degree != 1 {
            return bad(format!("t0 = {t0} is not a leaf"));
        }
        Ok(Template {
            size,
            edges,
            t0,
            t1,
        })
    }

    /// Reads `vertex N`, `edge A B`, `t0 A` and `t1 B` lines.
    pub fn parse(text: &str) -> Result<Self> {
        let mut size = None;
        let mut edges = Vec::new();
        let (mut t0, mut t1) = (None, None);
        for (i, raw) in text.lines().enumerate() {
            let bad = |m: &str| Error::BadTemplate(format!("line {}: {m}", i + 1));
            let content = raw.split('#').next().unwrap_or("");
            let words: Vec<&str> = content.split_whitespace().collect();
            let Some(&keyword) = words.first() else {
                continue;
            };
            let nums: Vec<usize> = words[1..]
                .iter()
                .map(|w| w.parse().map_err(|_| bad(&format!("bad number `{w}`"))))
                .collect::<Result<_>>()?;
            match (keyword, nums.as_slice()) {
                ("vertex", &[n]) => size = Some(n),
                ("edge", &[a, b]) => edges.push((a, b)),
                ("t0", &[a]) => t0 = Some(a),
                ("t1", &[b]) => t1 = Some(b),
                _ => return Err(bad(&format!("malformed `{}`", content.trim()))),
            }
        }
        let missing = |what: &str| Error::BadTemplate(format!("missing `{what}`"));
        Template::new(
            size.ok_or_else(|| missing("vertex"))?,
            edges,
            t0.ok_or_else(|| missing("t0"))?,
            t1.ok_or_else(|| missing("t1"))?,
        )
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn t0(&self) -> usize {
        self.t0
    }

    pub fn t1(&self) -> usize {
        self.t1
    }
}

/// Copies of the template with `t1` of copy `j` merged into `t0` of copy
/// `j + 1`.
fn chain_templates(tpl: &Template) -> Result<Relation> {
    let n = tpl.size;
    let s = FiniteStructure::new(n).with_relation("T", &tpl.edges)?;
    let copies = omega_copies(&s, "T")?;
    // μ = {(n·j + t1, n·(j+1) + t0)}: (11)^{t1} ((11)^n)* (_1)^{n + t0 − t1}
    let mut a = UnaryAutomaton::new(2, 1, 0);
    let mut state = 0;
    for _ in 0..tpl.t1 {
        let next = a.add_state();
        a.add_transition(state, 0b11, next);
        state = next;
    }
    let loop_start = state;
    for k in 0..n {
        let next = if k + 1 == n {
            loop_start
        } else {
            a.add_state()
        };
        a.add_transition(state, 0b11, next);
        state = next;
    }
    for _ in 0..n + tpl.t0 - tpl.t1 {
        let next = a.add_state();
        a.add_transition(state, 0b01, next);
        state = next;
    }
    a.set_accepting(state, true);
    let mu = Relation::from_automaton(&a)?;
    quotient(&copies, &equivalence_closure(&mu)?)
}

/// All copies of the template glued at `t0 = t1`; the glued vertex is the
/// centre and keeps number `t0`.
pub fn shallow_star(tpl: &Template) -> Result<Relation> {
    if tpl.t0 != tpl.t1 {
        return Err(Error::BadTemplate(
            "a shallow star needs t0 = t1".to_string(),
        ));
    }
    chain_templates(tpl)
}

/// Copies of the template strung along the spine from `t0` to `t1`.
pub fn periodic_path(tpl: &Template) -> Result<Relation> {
    if tpl.t0 == tpl.t1 {
        return Err(Error::BadTemplate(
            "a periodic path needs t0 ≠ t1".to_string(),
        ));
    }
    chain_templates(tpl)
}
