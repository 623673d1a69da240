//! First-order queries over relations, compiled to automata.

mod formula;

pub use formula::{parse_formula, Formula};

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::relation::Relation;

/// Named base relations a formula may mention.
#[derive(Debug, Clone, Default)]
pub struct StructureEnv {
    relations: BTreeMap<String, Relation>,
}

impl StructureEnv {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &str, relation: Relation) -> Self {
        self.insert(name, relation);
        self
    }

    pub fn insert(&mut self, name: &str, relation: Relation) {
        self.relations.insert(name.to_string(), relation);
    }

    pub fn get(&self, name: &str) -> Option<&Relation> {
        self.relations.get(name)
    }
}

/// Compiles `φ` to the relation of its satisfying assignments. Components
/// follow [`Formula::free_vars`].
pub fn compile(phi: &Formula, env: &StructureEnv) -> Result<Relation> {
    let vars = phi.free_vars();
    Compiler { env }.formula(phi, &vars)
}

/// Compiles `φ` with an explicit component order. `vars` must list every
/// free variable; extra names become unconstrained components.
pub fn compile_with_vars(phi: &Formula, env: &StructureEnv, vars: &[&str]) -> Result<Relation> {
    let vars: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
    let missing: Vec<String> = phi
        .free_vars()
        .into_iter()
        .filter(|v| !vars.contains(v))
        .collect();
    if !missing.is_empty() {
        return Err(Error::NotASentence(missing));
    }
    Compiler { env }.formula(phi, &vars)
}

/// Truth value of a closed formula.
pub fn check_sentence(phi: &Formula, env: &StructureEnv) -> Result<bool> {
    let free = phi.free_vars();
    if !free.is_empty() {
        return Err(Error::NotASentence(free));
    }
    Ok(Compiler { env }.formula(phi, &[])?.accepts(&[]))
}

/// Parses and decides a sentence in one step.
pub fn holds(sentence: &str, env: &StructureEnv) -> Result<bool> {
    check_sentence(&parse_formula(sentence)?, env)
}

/// Elements whose class under the equivalence `q` is infinite.
pub fn infinite_class(q: &Relation) -> Result<Relation> {
    let env = StructureEnv::new().with("Q", q.clone());
    compile(
        &parse_formula("A y. E z. (Q(x,z) & len_lt(y,z))").expect("fixed formula"),
        &env,
    )
}

struct Compiler<'a> {
    env: &'a StructureEnv,
}

impl Compiler<'_> {
    /// Innermost binding wins.
    fn slot(vars: &[String], v: &str) -> usize {
        vars.iter()
            .rposition(|x| x == v)
            .expect("variable in scope")
    }

    fn formula(&self, phi: &Formula, vars: &[String]) -> Result<Relation> {
        let m = vars.len();
        Ok(match phi {
            Formula::Atom(name, args) => {
                let rel = self
                    .env
                    .get(name)
                    .ok_or_else(|| Error::UnknownRelation(name.clone()))?;
                if rel.arity() != args.len() {
                    return Err(Error::ArityMismatch {
                        expected: rel.arity(),
                        found: args.len(),
                    });
                }
                let slots: Vec<usize> = args.iter().map(|a| Self::slot(vars, a)).collect();
                let mut distinct = slots.clone();
                distinct.sort_unstable();
                distinct.dedup();
                if distinct.len() == slots.len() {
                    rel.cylindrify(m, &slots)?
                } else {
                    self.repeated_atom(rel, &slots, m)?
                }
            }
            Formula::Eq(a, b) => {
                let (sa, sb) = (Self::slot(vars, a), Self::slot(vars, b));
                if sa == sb {
                    Relation::full(m)
                } else {
                    Relation::diagonal().cylindrify(m, &[sa, sb])?
                }
            }
            Formula::LenLt(a, b) => {
                let (sa, sb) = (Self::slot(vars, a), Self::slot(vars, b));
                if sa == sb {
                    Relation::empty(m)
                } else {
                    Relation::length_lt().cylindrify(m, &[sa, sb])?
                }
            }
            Formula::Not(g) => self.formula(g, vars)?.complement(),
            Formula::And(a, b) => self
                .formula(a, vars)?
                .intersection(&self.formula(b, vars)?)?,
            Formula::Or(a, b) => self.formula(a, vars)?.union(&self.formula(b, vars)?)?,
            Formula::Implies(a, b) => self
                .formula(a, vars)?
                .complement()
                .union(&self.formula(b, vars)?)?,
            Formula::Exists(v, g) => self.exists(v, g, vars)?,
            Formula::Forall(v, g) => {
                let inner = Formula::not((**g).clone());
                self.exists(v, &inner, vars)?.complement()
            }
        })
    }

    fn exists(&self, v: &str, body: &Formula, vars: &[String]) -> Result<Relation> {
        let mut inner = vars.to_vec();
        inner.push(v.to_string());
        self.formula(body, &inner)?.project_any(vars.len())
    }

    /// An atom such as `R(x,x)`: place the relation on fresh components,
    /// equate each with its variable, then project the fresh ones away.
    fn repeated_atom(&self, rel: &Relation, slots: &[usize], m: usize) -> Result<Relation> {
        let k = slots.len();
        let fresh: Vec<usize> = (m..m + k).collect();
        let mut r = rel.cylindrify(m + k, &fresh)?;
        for (i, &s) in slots.iter().enumerate() {
            let eq = Relation::diagonal().cylindrify(m + k, &[m + i, s])?;
            r = r.intersection(&eq)?;
        }
        for _ in 0..k {
            r = r.project_any(r.arity() - 1)?;
        }
        Ok(r)
    }
}

/// Common properties of binary relations, decided by sentences.
pub mod predicates {
    use super::{holds, StructureEnv};
    use crate::error::Result;
    use crate::relation::Relation;

    fn check(sentence: &str, r: &Relation) -> Result<bool> {
        holds(sentence, &StructureEnv::new().with("R", r.clone()))
    }

    pub fn reflexive(r: &Relation) -> Result<bool> {
        check("A x. R(x,x)", r)
    }

    pub fn irreflexive(r: &Relation) -> Result<bool> {
        check("A x. !R(x,x)", r)
    }

    pub fn symmetric(r: &Relation) -> Result<bool> {
        check("A x. A y. (R(x,y) -> R(y,x))", r)
    }

    pub fn antisymmetric(r: &Relation) -> Result<bool> {
        check("A x. A y. ((R(x,y) & R(y,x)) -> x = y)", r)
    }

    pub fn transitive(r: &Relation) -> Result<bool> {
        check("A x. A y. A z. ((R(x,y) & R(y,z)) -> R(x,z))", r)
    }

    pub fn functional(r: &Relation) -> Result<bool> {
        check("A x. A y. A z. ((R(x,y) & R(x,z)) -> y = z)", r)
    }

    pub fn total(r: &Relation) -> Result<bool> {
        check("A x. E y. R(x,y)", r)
    }

    pub fn surjective(r: &Relation) -> Result<bool> {
        check("A y. E x. R(x,y)", r)
    }

    /// Functional converse.
    pub fn injective(r: &Relation) -> Result<bool> {
        check("A x. A y. A z. ((R(x,z) & R(y,z)) -> x = y)", r)
    }

    pub fn equivalence(r: &Relation) -> Result<bool> {
        Ok(reflexive(r)? && symmetric(r)? && transitive(r)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::UnaryAutomaton;

    fn succ() -> Relation {
        let mut a = UnaryAutomaton::new(2, 2, 0);
        a.add_transition(0, 0b11, 0);
        a.add_transition(0, 0b01, 1);
        a.set_accepting(1, true);
        Relation::from_automaton(&a).unwrap()
    }

    fn env() -> StructureEnv {
        StructureEnv::new().with("R", succ())
    }

    fn run(text: &str) -> Relation {
        compile(&parse_formula(text).unwrap(), &env()).unwrap()
    }

    #[test]
    fn compile_examples() {
        assert_eq!(run("E y. R(x,y)"), Relation::full(1));
        assert_eq!(run("R(x,x)"), Relation::empty(1));
        assert_eq!(run("E y. (R(y,x) & len_lt(x,y))"), Relation::empty(1));
        assert_eq!(run("R(y,x)"), succ());
        let swapped =
            compile_with_vars(&parse_formula("R(y,x)").unwrap(), &env(), &["x", "y"]).unwrap();
        assert_eq!(swapped, succ().converse().unwrap());
    }

    #[test]
    fn sentence_examples() {
        assert!(holds("A x. E y. R(x,y)", &env()).unwrap());
        assert!(!holds("E x. R(x,x)", &env()).unwrap());
        assert!(holds("A x. A y. (R(x,y) -> !R(y,x))", &env()).unwrap());
        assert!(matches!(
            holds("R(x,y)", &env()),
            Err(Error::NotASentence(v)) if v == ["x", "y"]
        ));
    }

    #[test]
    fn errors() {
        let bad = parse_formula("S(x,y)").unwrap();
        assert_eq!(
            compile(&bad, &env()),
            Err(Error::UnknownRelation("S".into()))
        );
        let bad = parse_formula("R(x)").unwrap();
        assert!(matches!(
            compile(&bad, &env()),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn shadowing_binds_innermost() {
        // the inner x is a fresh variable, so this says "x has a successor"
        assert_eq!(run("E y. (R(x,y) & E x. R(y,x))"), Relation::full(1));
    }

    #[test]
    fn infinite_class_examples() {
        assert_eq!(
            infinite_class(&Relation::full(2)).unwrap(),
            Relation::full(1)
        );
        assert_eq!(
            infinite_class(&Relation::diagonal()).unwrap(),
            Relation::empty(1)
        );
    }

    #[test]
    fn predicates_match_direct_constructions() {
        use predicates::*;
        let lt = Relation::length_lt();
        let leq = lt.union(&Relation::diagonal()).unwrap();
        assert!(reflexive(&leq).unwrap() && !reflexive(&lt).unwrap());
        assert!(transitive(&lt).unwrap() && !transitive(&succ()).unwrap());
        assert!(antisymmetric(&leq).unwrap() && !symmetric(&leq).unwrap());
        assert!(functional(&succ()).unwrap() && !functional(&lt).unwrap());
        assert!(equivalence(&Relation::full(2)).unwrap());
    }
}
