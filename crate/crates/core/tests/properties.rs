mod common;

use backdoor_core::classes::{
    is_member, matching_certificate, membership, nonmember_clauses, solve_in_class, Membership,
};
use backdoor_core::dimacs::{parse_dimacs, write_dimacs};
use backdoor_core::hitting_set::{hs3_solve, hs_verify, HsInstance};
use backdoor_core::incidence::IncidenceGraph;
use backdoor_core::{Assignment, BaseClassId, Clause, CnfFormula, Evaluation, Literal, Variable};
use proptest::prelude::*;

use common::*;

fn literal() -> impl Strategy<Value = Literal> {
    (1u32..=6, any::<bool>()).prop_map(|(v, p)| Literal::new(Variable::new(v), p))
}

fn clause(max_width: usize) -> impl Strategy<Value = Clause> {
    prop::collection::vec(literal(), 0..=max_width).prop_filter_map("tautology", |lits| Clause::new(lits).ok())
}

fn formula(max_width: usize, max_clauses: usize) -> impl Strategy<Value = CnfFormula> {
    prop::collection::vec(clause(max_width), 0..=max_clauses).prop_map(CnfFormula::new)
}

fn partial_assignment() -> impl Strategy<Value = Assignment> {
    prop::collection::btree_map(1u32..=7, any::<bool>(), 0..=5)
        .prop_map(|m| Assignment::from_pairs(m.into_iter().map(|(v, b)| (Variable::new(v), b))).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn dimacs_round_trip(f in formula(4, 8)) {
        prop_assert_eq!(parse_dimacs(&write_dimacs(&f)).unwrap(), f);
    }

    #[test]
    fn reduct_laws(f in formula(3, 8), t in partial_assignment(), u in partial_assignment()) {
        let r = f.reduct(&t);
        prop_assert_eq!(r.reduct(&t), r.clone());
        prop_assert!(r.variables().iter().all(|v| !t.contains(*v)));
        let disjoint: Assignment = Assignment::from_pairs(u.iter().filter(|(v, _)| !t.contains(*v))).unwrap();
        let mut both = t.clone();
        both.extend(&disjoint).unwrap();
        prop_assert_eq!(r.reduct(&disjoint), f.reduct(&both));
    }

    #[test]
    fn evaluate_matches_reduct(f in formula(3, 6), t in partial_assignment()) {
        let r = f.reduct(&t);
        let expected = if r.is_empty() {
            Evaluation::Satisfied
        } else if r.contains_empty_clause() {
            Evaluation::Falsified
        } else {
            Evaluation::Undetermined
        };
        prop_assert_eq!(f.evaluate(&t), expected);
    }

    #[test]
    fn incidence_edge_count(f in formula(4, 8)) {
        let g = IncidenceGraph::new(&f);
        prop_assert_eq!(g.num_edges(), f.clauses().iter().map(Clause::len).sum::<usize>());
        prop_assert_eq!(g.num_vertices(), f.num_variables() + f.len());
    }

    #[test]
    fn membership_matches_oracles(f in formula(3, 6)) {
        for class in BaseClassId::ALL {
            prop_assert_eq!(is_member(&f, class), member_oracle(&f, class), "{}", class);
        }
    }

    #[test]
    fn class_solvers_match_brute_force(f in formula(3, 7)) {
        let sat = brute_sat(&f);
        for class in BaseClassId::ALL {
            match solve_in_class(&f, class) {
                Err(_) => prop_assert!(!is_member(&f, class)),
                Ok(None) => prop_assert!(!sat, "{} says UNSAT", class),
                Ok(Some(model)) => {
                    prop_assert!(sat);
                    prop_assert_eq!(model.domain(), f.variables());
                    prop_assert_eq!(f.evaluate(&model), Evaluation::Satisfied);
                }
            }
        }
    }

    #[test]
    fn chains_inside_horn_and_krom(f in formula(2, 6)) {
        if is_member(&f, BaseClassId::Chains) {
            prop_assert!(is_member(&f, BaseClassId::Horn));
            prop_assert!(is_member(&f, BaseClassId::Krom));
        }
    }

    #[test]
    fn matching_certificates_are_injective(f in formula(3, 6)) {
        if let Some(cert) = matching_certificate(&f) {
            let mut seen = std::collections::BTreeSet::new();
            for (c, v) in cert.iter() {
                prop_assert!(c.literal_of(v).is_some());
                prop_assert!(seen.insert(v));
            }
            prop_assert_eq!(cert.len(), f.len());
            prop_assert!(solve_in_class(&f, BaseClassId::Match).unwrap().is_some());
        }
        prop_assert_eq!(matches!(membership(&f, BaseClassId::Match), Membership::Matched(_)), match_oracle(&f));
    }

    #[test]
    fn nonmembers_are_exactly_the_violators(f in formula(3, 6)) {
        for class in BaseClassId::CLAUSE_DEFINED {
            let bad = nonmember_clauses(&f, class).unwrap();
            prop_assert_eq!(bad.is_empty(), is_member(&f, class));
            for c in f.clauses() {
                prop_assert_eq!(bad.contains(c), !clause_ok(class, c));
            }
        }
    }

    #[test]
    fn hitting_set_matches_oracle(
        sets in prop::collection::vec(prop::collection::btree_set(1u32..=8, 1..=3), 0..=8),
        k in 0usize..=5,
    ) {
        let sets: Vec<Vec<u32>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        let inst = HsInstance::from_sets(sets.clone()).unwrap();
        let r = hs3_solve(&inst, k).unwrap();
        prop_assert_eq!(r.found, hitting_set_oracle(&sets, k));
        if r.found {
            prop_assert!(hs_verify(&inst, &r.hitting_set));
            prop_assert!(r.hitting_set.len() <= k);
            prop_assert!(hs3_solve(&inst, k + 1).unwrap().found);
        }
        prop_assert!(r.nodes as f64 <= 3f64.powi(k as i32) * (sets.len() as f64 + 1.0));
    }
}

#[test]
fn classify_examples() {
    let f = CnfFormula::from_dimacs(&[&[-1, 2], &[-2, 3], &[-3, 1]]);
    assert!(is_member(&f, BaseClassId::Match));
    assert!(!is_member(&f, BaseClassId::Forest));
    assert!(!is_member(&f, BaseClassId::Chains));
    let chain = CnfFormula::from_dimacs(&[&[1], &[-1, 2], &[-2]]);
    assert!(is_member(&chain, BaseClassId::Chains));
    assert_eq!(solve_in_class(&chain, BaseClassId::Chains).unwrap(), None);
    for class in BaseClassId::ALL {
        assert!(is_member(&CnfFormula::default(), class));
    }
}
