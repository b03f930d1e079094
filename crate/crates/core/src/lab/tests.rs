use super::*;
use crate::problem::{parse_clause, parse_closure, parse_term};

fn cl(s: &str) -> Clause {
    parse_clause(s).unwrap()
}

fn t(s: &str) -> Term {
    parse_term(s).unwrap()
}

fn example1() -> OrderingConfig {
    OrderingConfig::kbo(
        &[("f", 4), ("g", 3), ("b", 4), ("b'", 2), ("c", 1), ("c'", 1), ("d", 1)],
        1,
        &[],
    )
}

fn example1_universe() -> Universe {
    let terms: Vec<Term> =
        ["b", "b'", "c", "c'", "d", "f(c,d)", "g(b)", "g(c)", "g(b')", "g(c')"].iter().map(|s| t(s)).collect();
    Universe::from_terms(terms.iter())
}

#[test]
fn grounding_function() {
    let u = Universe::from_terms([t("b"), t("f(c,d)")].iter());
    assert_eq!(u.len(), 4);
    let g = ground_instances(&Clause::empty(), &u);
    assert_eq!(g.len(), 1);
    assert!(g[0].is_empty());
    assert_eq!(ground_instances(&cl("a = b"), &u).len(), 1);
    let c2 = cl("f(X,Y) != b | g(X) = d");
    let inst = ground_instances(&c2, &u);
    assert_eq!(inst.len(), 16);
    assert!(inst.iter().any(|c| c.instance() == cl("f(c,d) != b | g(c) = d")));
}

#[test]
fn generated_universe_is_subterm_closed() {
    let bound = UniverseBound { max_depth: 2, max_terms: 12, signature: Signature::small() };
    let u = Universe::generate(&bound);
    assert_eq!(u.len(), 12);
    for s in u.terms() {
        for sub in s.subterms() {
            assert!(u.terms().contains(sub));
        }
    }
}

#[test]
fn system_enumeration() {
    let cfg = OrderingConfig::lpo(&["b", "c"]);
    let u = Universe::from_terms([t("b"), t("c")].iter());
    let all = enumerate_left_reduced(&u, &cfg, 100).unwrap();
    assert_eq!(all.len(), 2);
    assert!(all[0].is_empty());
    assert_eq!(all[1].rules(), &[(t("b"), t("c"))]);
    assert_eq!(enumerate_left_reduced(&Universe::from_terms([].iter()), &cfg, 10).unwrap().len(), 1);

    let cfg = OrderingConfig::kbo_uniform();
    let u = Universe::from_terms([t("f(b)"), t("g(g(b))"), t("b")].iter());
    let all = enumerate_left_reduced(&u, &cfg, 10_000).unwrap();
    assert!(all.iter().all(|r| r.is_left_reduced()));
    assert!(all.iter().any(|r| r.len() == 2 && r.contains(&t("f(b)"), &t("b")) && r.contains(&t("g(g(b))"), &t("b"))));
    let mut keys: Vec<String> = all.iter().map(|r| format!("{:?}", r.rules())).collect();
    let n = keys.len();
    keys.sort();
    keys.dedup();
    assert_eq!(keys.len(), n);
    assert!(enumerate_left_reduced(&u, &cfg, 3).is_err());
}

#[test]
fn entailment_examples() {
    let c3 = cl("b' = c' | b = c");
    let c4 = cl("g(b') != g(c')");
    assert!(ground_entails(&[c3.clone(), c4.clone()], &cl("b = c")));
    let base = [c3, c4, cl("f(c,d) = c"), cl("f(c,d) != b | g(c) = d")];
    assert!(ground_entails(&base, &cl("g(b) = d")));
    assert!(!ground_entails(&base[..3], &cl("g(b) = d")));
    assert!(ground_entails(&[cl("a = b | c = d")], &cl("a = b | c = d")));
    assert!(ground_entails(&[], &cl("a = a")));
    assert!(!ground_entails(&[], &cl("a = b")));
    assert!(ground_entails(&[cl("a != a")], &cl("a = b")));
}

#[test]
fn classical_redundancy() {
    let cfg = example1();
    let u = example1_universe();
    let mut n = Vec::new();
    for c in ["f(X,d) = X", "f(X,Y) != b | g(X) = d", "b' = c' | b = c", "g(b') != g(c')", "g(c) != d"] {
        n.extend(ground_instances(&cl(c), &u).into_iter().map(|g| g.instance()));
    }
    let c7 = cl("g(b) = d");
    assert!(classically_redundant(&c7, &n, &cfg));
    assert!(!classically_redundant(&cl("a = b"), &[], &cfg));
    let cfg = OrderingConfig::kbo(&[("f", 2), ("b", 2), ("c", 1), ("d", 1)], 1, &[]);
    assert!(ground_entails(&[cl("f(b) = d")], &cl("c != b | f(c) = d")));
    assert!(!classically_redundant(&cl("c != b | f(c) = d"), &[cl("f(b) = d")], &cfg));
}

#[test]
fn closure_redundancy() {
    let cfg = OrderingConfig::kbo_uniform();
    let c = GroundClosure::ground(cl("g(b) != c | f(c) != d"));
    let c2 = GroundClosure::ground(cl("f(g(b)) != d"));
    let u = Universe::of_clauses([&c.clause, &c2.clause]);
    let lab = Lab::new(cfg.clone(), u, 1_000_000);
    let v = lab.closure_redundant(&c, &[c2.clone()], Variant::Horn).unwrap();
    assert!(v.redundant, "{v}");
    assert!(v.checked > 1);
    let v = lab.closure_redundant(&c, &[], Variant::Horn).unwrap();
    assert!(!v.redundant);
    let taut = GroundClosure::ground(cl("g(b) = g(b)"));
    assert!(lab.closure_redundant(&taut, &[], Variant::Horn).unwrap().redundant);
}

#[test]
fn c7_is_not_closure_redundant() {
    let cfg = example1();
    let u = example1_universe();
    let mut n = Vec::new();
    for c in ["f(X,d) = X", "f(X,Y) != b | g(X) = d", "b' = c' | b = c", "g(b') != g(c')", "g(c) != d"] {
        n.extend(ground_instances(&cl(c), &u));
    }
    let lab = Lab::new(cfg, u, 1_000_000);
    let v = lab.closure_redundant(&GroundClosure::ground(cl("g(b) = d")), &n, Variant::Horn).unwrap();
    assert!(!v.redundant);
    assert!(v.witness.is_some());
}

#[test]
fn inference_redundancy() {
    let cfg = OrderingConfig::kbo_uniform();
    let d = GroundClosure::ground(cl("f(b) = b"));
    let c = GroundClosure::ground(cl("g(f(b)) != d"));
    let infs = crate::calculus::ground_ps1(&d, &c, &cfg);
    assert_eq!(infs.len(), 1);
    let u = Universe::of_clauses([&d.clause, &c.clause, &infs[0].conclusion.clause]);
    let lab = Lab::new(cfg.clone(), u, 1_000_000);
    let n = vec![d.clone(), c.clone(), infs[0].conclusion.clone()];
    assert!(lab.inference_redundant(&infs[0], &n, Variant::Horn).unwrap().redundant);
    assert!(!lab.inference_redundant(&infs[0], &n[..2], Variant::Horn).unwrap().redundant);

    let (cc, th) = parse_closure("g(X) != d", "X -> f(b)").unwrap();
    let c = GroundClosure::new(cc, th).unwrap();
    let infs = crate::calculus::ground_ps2(&d, &c, &cfg);
    // a universe without f(b) holds no system with the rule f(b) -> b
    let lab = Lab::new(cfg, Universe::from_terms([t("b"), t("d")].iter()), 1000);
    assert!(lab.inference_redundant(&infs[0], &[], Variant::Horn).unwrap().redundant);
}
