mod common;

use common::oracle::{compare_with_brute_force, random_formula};
use common::{random_relation, random_relation_arity, rng};
use unary_fa::fo::{holds, predicates, StructureEnv};
use unary_fa::Relation;

#[test]
fn compiled_formulas_match_brute_force() {
    let mut rng = rng(41);
    let (mut checked, mut unstable, mut quantified) = (0, 0, 0);
    for _ in 0..40 {
        let (r, s, u) = (
            random_relation(&mut rng),
            random_relation(&mut rng),
            random_relation_arity(&mut rng, 1),
        );
        let phi = random_formula(&mut rng, 2, 3);
        assert!(phi.quantifier_depth() <= 2 && phi.free_vars().len() <= 3);
        quantified += usize::from(phi.quantifier_depth() > 0);
        let env = [("R", &r), ("S", &s), ("U", &u)];
        let a = compare_with_brute_force(&phi, &env, 8, 30, 60);
        assert!(a.mismatches.is_empty(), "{:?}", a.mismatches);
        checked += a.checked;
        unstable += a.unstable;
    }
    assert!(quantified >= 10, "only {quantified} quantified formulas");
    assert!(unstable * 10 <= checked, "{unstable} unstable of {checked}");
}

#[test]
fn predicates_match_direct_constructions() {
    let mut rng = rng(42);
    let diag = Relation::diagonal();
    for _ in 0..40 {
        // unions with the diagonal and converse make the positive cases occur
        let base = random_relation(&mut rng);
        let r = match rng_pick(&mut rng) {
            0 => base,
            1 => base.union(&diag).unwrap(),
            _ => base.union(&base.converse().unwrap()).unwrap(),
        };
        let conv = r.converse().unwrap();
        assert_eq!(
            predicates::reflexive(&r).unwrap(),
            diag.is_subset_of(&r).unwrap()
        );
        assert_eq!(predicates::symmetric(&r).unwrap(), r == conv);
        assert_eq!(
            predicates::antisymmetric(&r).unwrap(),
            r.intersection(&conv).unwrap().is_subset_of(&diag).unwrap()
        );
        assert_eq!(
            predicates::transitive(&r).unwrap(),
            r.compose(&r).unwrap().is_subset_of(&r).unwrap()
        );
        // functional: R⁻¹∘R ⊆ E
        assert_eq!(
            predicates::functional(&r).unwrap(),
            conv.compose(&r).unwrap().is_subset_of(&diag).unwrap()
        );
        assert_eq!(
            predicates::injective(&r).unwrap(),
            predicates::functional(&conv).unwrap()
        );
    }
}

fn rng_pick(rng: &mut impl rand::Rng) -> u32 {
    rng.gen_range(0..3)
}

#[test]
fn sentences_about_successor() {
    let env = StructureEnv::new().with("R", common::succ());
    assert!(!holds("E x. R(x,x)", &env).unwrap());
    assert!(holds("A x. E y. R(x,y)", &env).unwrap());
    assert!(!holds("A y. E x. R(x,y)", &env).unwrap());
    assert!(holds("A x. A y. (R(x,y) -> len_lt(x,y))", &env).unwrap());
}
