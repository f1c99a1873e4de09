//! The ice-cream family examples, factor-based and dimension-based.

mod common;

use common::*;
use precedent_core::oracle::{
    check_consistency, enumerate_query_situations, reference_dhrm_bound, reference_hrm_forces,
    DEFAULT_ENUMERATION_CAP,
};
use precedent_core::{
    dhrm_bound, dhrm_forces_outcome, hrm_forces, rm_forces, satisfies, Blocker, BoundClaim,
    Condition, DimCaseBase, DirectCheck, FactorCaseBase, FailureWitness, FlatFactorCaseBase, Goal,
    Literal, Rule, Side,
};

fn literal_goal(trace: &precedent_core::DerivationTrace) -> String {
    match &trace.goal {
        Goal::Literal(l) => l.to_string(),
        other => panic!("unexpected goal {other:?}"),
    }
}

#[test]
fn emma_satisfies_only_her_basic_factors() {
    let h = family_hierarchy();
    let e = emma_monday(&h);
    assert!(satisfies(&h, &e, &Literal::positive("F2")).unwrap());
    assert!(!satisfies(&h, &e, &Literal::positive("pi")).unwrap());
    assert!(!satisfies(&h, &e, &Literal::negative("pi")).unwrap());
}

#[test]
fn max_does_not_force_emma() {
    let h = family_hierarchy();
    let cb = FactorCaseBase::new(&h, vec![max_monday(&h)]).unwrap();
    let e = emma_monday(&h);
    let (forced, trace) = hrm_forces(&cb, &e, &Literal::positive("pi")).unwrap();
    assert!(!forced);
    assert!(trace.is_well_formed());
    assert!(!reference_hrm_forces(&cb, &e, &Literal::positive("pi")).unwrap());

    let chain: Vec<String> = trace
        .blocking_chain()
        .iter()
        .map(|(node, _)| literal_goal(node))
        .collect();
    assert_eq!(chain, ["pi", "Q", "P", "F1"]);
    let (leaf, _) = trace.blocking_chain().last().copied().unwrap();
    assert_eq!(leaf.direct, DirectCheck::Fails);
    assert_eq!(leaf.failure_witness, Some(FailureWitness::BaseLevel));

    // Under Q the precedent also carries the con condition on F3, which
    // holds because E is not forced for F3.
    let q = trace.attempts[0].conditions[0].subgoal().unwrap();
    match &q.attempts[0].conditions[1] {
        Condition::Con {
            factor,
            in_precedent,
            holds,
            subgoal,
        } => {
            assert_eq!(factor.as_str(), "F3");
            assert!(!in_precedent && *holds && !subgoal.is_forced());
        }
        other => panic!("expected con condition, got {other:?}"),
    }
    // R is vacuous: M does not have it.
    assert!(matches!(
        &trace.attempts[0].conditions[1],
        Condition::Pro {
            subgoal: None,
            in_precedent: false,
            holds: true,
            ..
        }
    ));
}

#[test]
fn adding_p_to_emma_makes_max_force_her() {
    let h = family_hierarchy();
    let cb = FactorCaseBase::new(&h, vec![max_monday(&h)]).unwrap();
    let e = situation(&h, &["F2", "F6", "P"], &["F1", "F3", "F4", "F5"]);
    let (forced, trace) = hrm_forces(&cb, &e, &Literal::positive("pi")).unwrap();
    assert!(forced);
    assert_eq!(trace.rule, Some(Rule::Precedent { case: "M".into() }));
    assert!(trace.is_well_formed());
}

#[test]
fn primed_cases_are_distinguished_on_f6() {
    let h = family_hierarchy();
    let cb = FactorCaseBase::new(&h, vec![max_monday_prime(&h)]).unwrap();
    let e = emma_monday_prime(&h);
    let (forced, trace) = hrm_forces(&cb, &e, &Literal::positive("pi")).unwrap();
    assert!(!forced);
    let r = trace.attempts[0]
        .conditions
        .iter()
        .find(|c| c.subject() == "R")
        .and_then(Condition::subgoal)
        .unwrap();
    assert!(!r.is_forced());
    assert_eq!(
        r.failure_witness,
        Some(FailureWitness::Blocked {
            blockers: vec![Blocker {
                case: "M'".into(),
                subject: "F6".into()
            }]
        })
    );
    // F4 is required and present; F5 does not apply.
    let conds = &r.attempts[0].conditions;
    assert!(conds[0].holds() && conds[1].holds() && !conds[2].holds());
}

#[test]
fn double_primed_flat_vs_hierarchical() {
    let h = family_hierarchy();
    let cb = FactorCaseBase::new(&h, vec![max_monday_double_prime(&h)]).unwrap();
    let flat = FlatFactorCaseBase::from_hierarchical(&cb).unwrap();
    let e2 = emma_monday_double_prime(&h);
    let (forced, trace) = rm_forces(&flat, &flat.project(&h, &e2).unwrap(), Side::Pi).unwrap();
    assert!(!forced);
    assert_eq!(
        trace.failure_witness,
        Some(FailureWitness::Blocked {
            blockers: vec![Blocker {
                case: "M''".into(),
                subject: "F1".into()
            }]
        })
    );

    let e2p = e2.with(h.index_of("P").unwrap(), Some(true));
    assert!(hrm_forces(&cb, &e2p, &Literal::positive("pi")).unwrap().0);
    // The flat model still distinguishes them.
    assert!(
        !rm_forces(&flat, &flat.project(&h, &e2p).unwrap(), Side::Pi)
            .unwrap()
            .0
    );
}

#[test]
fn max_alone_is_consistent() {
    let h = family_hierarchy();
    assert_eq!(
        enumerate_query_situations(&h, DEFAULT_ENUMERATION_CAP)
            .unwrap()
            .count(),
        64
    );
    assert!(enumerate_query_situations(&h, DEFAULT_ENUMERATION_CAP)
        .unwrap()
        .any(|s| s == emma_monday(&h)));
    let cb = FactorCaseBase::new(&h, vec![max_monday(&h)]).unwrap();
    let report = check_consistency(&cb, DEFAULT_ENUMERATION_CAP, 4).unwrap();
    assert!(report.consistent);
    assert_eq!(report.checked, 64);
}

#[test]
fn dimension_bounds_for_emma() {
    let h = family_dimensions();
    assert!(h.validate().is_valid());
    let cb = DimCaseBase::new(&h, vec![dim_max(&h)]).unwrap();
    let e = dim_emma(&h);

    let (forced, trace) = dhrm_bound(&cb, &e, &BoundClaim::lower(2, "Q")).unwrap();
    assert!(forced);
    assert_eq!(trace.rule, Some(Rule::Direct));

    let claim = BoundClaim::lower(3, "R");
    let (forced, trace) = dhrm_bound(&cb, &e, &claim).unwrap();
    assert!(!forced);
    assert!(!reference_dhrm_bound(&cb, &e, &claim).unwrap());
    assert_eq!(
        trace.failure_witness,
        Some(FailureWitness::Blocked {
            blockers: vec![Blocker {
                case: "M".into(),
                subject: "F6".into()
            }]
        })
    );
    // F4 and F5 hold, F6 fails.
    let holds: Vec<bool> = trace.attempts[0]
        .conditions
        .iter()
        .map(Condition::holds)
        .collect();
    assert_eq!(holds, [true, true, false]);

    assert!(!dhrm_bound(&cb, &e, &BoundClaim::lower(1, "pi")).unwrap().0);
    assert!(!dhrm_forces_outcome(&cb, &e, Side::Pi).unwrap().0);
}

#[test]
fn dimension_bounds_for_emma_prime() {
    let h = family_dimensions();
    let cb = DimCaseBase::new(&h, vec![dim_max(&h)]).unwrap();
    let e = dim_emma_prime(&h);
    assert!(dhrm_bound(&cb, &e, &BoundClaim::lower(3, "R")).unwrap().0);
    let (forced, trace) = dhrm_forces_outcome(&cb, &e, Side::Pi).unwrap();
    assert!(forced);
    assert!(trace.is_well_formed());
    assert!(reference_dhrm_bound(&cb, &e, &BoundClaim::lower(1, "pi")).unwrap());
}

#[test]
fn max_forces_himself() {
    let h = family_dimensions();
    let m = dim_max(&h);
    let cb = DimCaseBase::new(&h, vec![m.clone()]).unwrap();
    let (forced, trace) = dhrm_forces_outcome(&cb, &m.facts, Side::Pi).unwrap();
    assert!(forced);
    assert_eq!(trace.rule, Some(Rule::Direct));
}

#[test]
fn empty_case_base_only_direct_bounds() {
    let h = family_dimensions();
    let cb = DimCaseBase::new(&h, vec![]).unwrap();
    let e = dim_emma(&h);
    assert!(reference_dhrm_bound(&cb, &e, &BoundClaim::lower(3, "Q")).unwrap());
    assert!(reference_dhrm_bound(&cb, &e, &BoundClaim::upper("Q", 3)).unwrap());
    assert!(!reference_dhrm_bound(&cb, &e, &BoundClaim::lower(4, "Q")).unwrap());
}
