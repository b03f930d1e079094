use super::*;
use crate::problem::parse;
use crate::simplify::Regime;

fn input(p: &crate::problem::ProblemFile) -> Vec<(String, Clause)> {
    p.clauses.iter().map(|n| (n.name.clone(), n.clause.clone())).collect()
}

#[test]
fn example_one_refuted_under_horn_closure() {
    let p = example1();
    let cfg = ProverConfig::new(p.ordering.clone(), RegimeConfig::defaults(Regime::HornClosure));
    let r = saturate(&input(&p), &cfg).unwrap();
    assert_eq!(r.status, Status::Unsatisfiable);
    let proof = r.proof.unwrap();
    for c in ["X != b | g(X) = d", "g(b) = d", "b' = c'"] {
        assert!(proof.contains_variant(&crate::problem::parse_clause(c).unwrap()), "missing {c}\n{proof}");
    }
    replay_proof(&proof, &cfg.ordering, &cfg.regime).unwrap();
    assert!(r.generated <= 200, "{}", r.generated);
    assert!(!r.warnings.is_empty());
}

#[test]
fn empty_input_saturates() {
    let cfg = ProverConfig::new(OrderingConfig::kbo_uniform(), RegimeConfig::defaults(Regime::HornClosure));
    let r = saturate(&[], &cfg).unwrap();
    assert_eq!(r.status, Status::Saturated);
    assert!(r.final_clauses.is_empty());
}

#[test]
fn blocked_combination_rejected() {
    let mut regime = RegimeConfig::defaults(Regime::HornClosure);
    regime.subsumption = crate::simplify::SubsumptionMode::FirstOrder;
    let mut cfg = ProverConfig::new(OrderingConfig::kbo_uniform(), regime);
    assert!(saturate(&[], &cfg).is_err());
    cfg.force = true;
    assert!(saturate(&[], &cfg).is_ok());
}

#[test]
fn incompleteness_replay() {
    let p = example1();
    let report = replay_incompleteness(&p.ordering);
    assert!(report.passed(), "{report}");
    assert_eq!(report.classical, Some(Status::Saturated));
    assert_eq!(report.horn, Some(Status::Unsatisfiable));
    assert!(report.steps[2].detail.contains("f(c,d) = c"));
}

#[test]
fn perturbed_weight_flags_side_condition() {
    let p = example1();
    let mut ord = p.ordering.clone();
    ord.set_weight(crate::term::Symbol::intern("b"), 1);
    let report = replay_incompleteness(&ord);
    let failure = report.failure().expect("some step fails");
    assert_eq!(failure.name, "C7 follows from smaller ground instances");
    assert!(failure.detail.contains("side condition"));
}

#[test]
fn deterministic_runs() {
    let text = "cnf(a, axiom, f(X, e) = X). cnf(b, axiom, f(e, X) = X). cnf(c, axiom, f(a, a) = e). cnf(g, negated_conjecture, f(a, f(a, b)) != b).";
    let p = parse(text).unwrap();
    let cfg = ProverConfig::new(p.ordering.clone(), RegimeConfig::defaults(Regime::HornClosure));
    let r1 = saturate(&input(&p), &cfg).unwrap();
    let r2 = saturate(&input(&p), &cfg).unwrap();
    assert_eq!(r1.status, r2.status);
    assert_eq!(r1.generated, r2.generated);
    assert_eq!(r1.proof.map(|p| p.to_string()), r2.proof.map(|p| p.to_string()));
}
