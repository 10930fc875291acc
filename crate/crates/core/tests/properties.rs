mod common;

use std::collections::BTreeSet;

use casp2smt::analysis::{dependency_graph, sccs, DependencyGraph};
use casp2smt::oracle::{brute_force_answer_sets, least_model, reduct, DomainBox};
use casp2smt::translate::clausify;
use casp2smt::{
    parse_program, AtomId, Constraint, LinearExpression, Rational, Relation, Valuation,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn relation() -> impl Strategy<Value = Relation> {
    prop_oneof![
        Just(Relation::Lt),
        Just(Relation::Le),
        Just(Relation::Gt),
        Just(Relation::Ge),
        Just(Relation::Eq),
        Just(Relation::Ne),
    ]
}

fn expression() -> impl Strategy<Value = LinearExpression> {
    (
        prop::collection::vec(
            (
                -6i64..=6,
                1i64..=3,
                prop::sample::select(vec!["x", "y", "z"]),
            ),
            0..4,
        ),
        -20i64..=20,
        1i64..=4,
    )
        .prop_map(|(terms, k, d)| {
            LinearExpression::new(
                terms
                    .into_iter()
                    .map(|(n, q, v)| (Rational::new(n.into(), q.into()), v)),
                Rational::new(k.into(), d.into()),
            )
        })
}

fn valuation() -> impl Strategy<Value = Valuation> {
    (-5i64..=5, -5i64..=5, -5i64..=5).prop_map(|(x, y, z)| {
        [("x", x), ("y", y), ("z", z)]
            .into_iter()
            .map(|(n, v)| (n.to_string(), Rational::from_integer(v.into())))
            .collect()
    })
}

proptest! {
    #[test]
    fn complement_is_an_involution(lhs in expression(), rel in relation()) {
        let c = Constraint::from_difference(lhs, rel);
        prop_assert_eq!(c.complement().complement(), c);
    }

    #[test]
    fn complement_holds_exactly_when_constraint_fails(lhs in expression(), rel in relation(), v in valuation()) {
        let c = Constraint::from_difference(lhs, rel);
        prop_assert_eq!(c.complement().holds(&v).map(|b| !b), c.holds(&v));
    }

    #[test]
    fn canonical_form_preserves_meaning(l in expression(), rel in relation(), r in expression(), v in valuation()) {
        let c = Constraint::new(&l, rel, &r);
        let direct = rel.compare(&l.evaluate(&v).unwrap(), &r.evaluate(&v).unwrap());
        prop_assert_eq!(c.holds(&v), Some(direct));
    }

    #[test]
    fn sccs_follow_edge_direction(edges in prop::collection::vec((0u32..8, 0u32..8), 0..20)) {
        let nodes: Vec<AtomId> = (0..8).map(AtomId).collect();
        let g = DependencyGraph::new(nodes, edges.iter().map(|(a, b)| (AtomId(*a), AtomId(*b))));
        let s = sccs(&g);
        let covered: usize = s.components().iter().map(Vec::len).sum();
        prop_assert_eq!(covered, 8);
        for (a, b) in g.edges() {
            prop_assert!(s.component_of(*b).unwrap() <= s.component_of(*a).unwrap());
        }
    }

    #[test]
    fn reduct_filter_is_idempotent(seed in any::<u64>(), mask in any::<u16>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (_, p) = common::random_program(&mut rng);
        let x: BTreeSet<AtomId> = p.atom_ids().filter(|a| mask >> (a.0 % 16) & 1 == 1).collect();
        prop_assert_eq!(reduct(&p, &x), reduct(&p, &x));
        let lm = least_model(&reduct(&p, &x));
        prop_assert_eq!(lm.clone(), least_model(&reduct(&p, &x)));
    }
}

#[test]
fn printed_programs_parse_back_identically() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let (src, p) = common::random_program(&mut rng);
        let printed = p.to_string();
        let q = parse_program(&printed).unwrap_or_else(|e| panic!("{e}\n{printed}\nfrom\n{src}"));
        // atom ids may be renumbered, the program may not change
        assert_eq!(q.to_string(), printed, "from\n{src}");
        assert_eq!(
            p.names(&p.atom_ids().collect()),
            q.names(&q.atom_ids().collect())
        );
        assert_eq!(p.rules().len(), q.rules().len());
    }
}

#[test]
fn answer_sets_form_an_antichain_without_double_negation() {
    // input atoms act as free facts, so only programs without them qualify
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    while checked < 100 {
        let (_, p) = common::random_program(&mut rng);
        if p.rules().iter().any(|r| !r.negneg.is_empty()) || !p.input_vocabulary().is_empty() {
            continue;
        }
        let found = brute_force_answer_sets(&p, &DomainBox::for_program(&p)).unwrap();
        let regular: Vec<BTreeSet<AtomId>> = found.iter().map(|a| a.atoms.clone()).collect();
        for a in &regular {
            for b in &regular {
                assert!(a == b || !a.is_subset(b), "{p}");
            }
        }
        checked += 1;
    }
}

#[test]
fn constraint_free_programs_use_classic_semantics() {
    // answer sets of a plain program coincide with its stable models: X is
    // the least model of the reduct w.r.t. X
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..100 {
        let (_, p) = common::random_program(&mut rng);
        if p.input_vocabulary().is_empty() {
            let found = brute_force_answer_sets(&p, &DomainBox::new()).unwrap();
            for a in &found {
                assert_eq!(least_model(&reduct(&p, &a.atoms)), Some(a.atoms.clone()));
            }
        }
    }
}

#[test]
fn fidelity_check_detects_a_dropped_clause() {
    // guards against a vacuous truth-table comparison
    let p = parse_program("a :- b, c. a :- not b, not c. b. c.").unwrap();
    let formula = clausify(&casp2smt::translate::translate_cas(&p, None).unwrap());
    let mut clauses: Vec<Vec<(AtomId, bool)>> = formula
        .skeleton()
        .iter()
        .map(|c| c.clause_literals().unwrap())
        .collect();
    let full = clauses.clone();
    clauses.remove(0);
    let n = formula.atoms().len();
    let mut differs = false;
    for bits in 0u32..8 {
        let mut fixed: Vec<Option<bool>> = (0..n)
            .map(|k| (k < 3).then_some(bits >> k & 1 == 1))
            .collect();
        let with_all = common::satisfiable(&full, &mut fixed);
        let without = common::satisfiable(&clauses, &mut fixed);
        differs |= with_all != without;
    }
    assert!(differs);
}

#[test]
fn dependency_graph_ignores_negative_and_input_atoms() {
    let p = parse_program("cvar x : int. a :- not b, not not c, [x > 0]. b :- c.").unwrap();
    let g = dependency_graph(&p);
    assert_eq!(g.render(&p), "b <- c\n");
}
