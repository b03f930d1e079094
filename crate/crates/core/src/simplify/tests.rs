use super::*;
use crate::problem::{parse_clause, parse_closure, parse_term};
use crate::rewrite::{closure_compare, GroundClosure, GroundRewriteSystem, Variant};
use crate::order::Comparison;

fn cl(s: &str) -> Clause {
    parse_clause(s).unwrap()
}

fn example1() -> OrderingConfig {
    OrderingConfig::kbo(
        &[("f", 4), ("g", 3), ("b", 4), ("b'", 2), ("c", 1), ("c'", 1), ("d", 1), ("h", 1)],
        1,
        &[],
    )
}

#[test]
fn licensing_matrix() {
    let horn = RegimeConfig::defaults(Regime::HornClosure);
    assert_eq!(horn.validate(false), Ok(vec![]));
    let mut bad = horn;
    bad.subsumption = SubsumptionMode::FirstOrder;
    assert!(bad.validate(false).is_err());
    assert_eq!(bad.validate(true).unwrap().len(), 1);
    bad = horn;
    bad.demod = DemodMode::Full;
    assert!(bad.validate(false).is_err());
    let mut nh = RegimeConfig::defaults(Regime::NonHornClosure);
    assert!(nh.validate(false).is_ok());
    nh.der = DerMode::Full;
    assert!(nh.validate(false).is_err());
    let mut classical = RegimeConfig::defaults(Regime::Classical);
    assert!(classical.validate(false).unwrap().is_empty());
    classical.der = DerMode::Full;
    assert_eq!(classical.validate(false).unwrap().len(), 1);
}

#[test]
fn der_examples() {
    assert_eq!(der(&cl("X != b | g(X) = d"), DerMode::Full), Outcome::Replaced(cl("g(b) = d"), SimpRule::Der));
    assert_eq!(der(&cl("X != b | f(X) = d"), DerMode::Full), Outcome::Replaced(cl("f(b) = d"), SimpRule::Der));
    assert_eq!(der(&cl("X != Y"), DerMode::Full), Outcome::Replaced(Clause::empty(), SimpRule::Der));
    assert_eq!(der(&cl("X != f(X) | g(X) = d"), DerMode::Full), Outcome::Unchanged);
    assert_eq!(der(&cl("X != b | g(X) = d"), DerMode::NegativeOnly), Outcome::Unchanged);
    assert_eq!(
        der(&cl("X != b | g(X) != d | a = c"), DerMode::NegativeOnly),
        Outcome::Replaced(cl("g(b) != d | a = c"), SimpRule::Der)
    );
    assert_eq!(der(&cl("X != b"), DerMode::Off), Outcome::Unchanged);
}

#[test]
fn demodulation_examples() {
    let cfg = example1();
    let out = demodulate(&cl("g(f(c,d)) != d"), &cl("f(X,d) = X"), DemodMode::ProperSubtermOnly, &cfg);
    assert_eq!(out, Outcome::Replaced(cl("g(c) != d"), SimpRule::Demodulation));
    assert_eq!(demodulate(&cl("g(c) != d"), &cl("f(X,d) = X"), DemodMode::Full, &cfg), Outcome::Unchanged);
}

#[test]
fn full_demodulation_can_grow_normalization_multiset() {
    let cfg = OrderingConfig::kbo_uniform();
    let c = cl("f(f(f(b))) != c");
    let unit = cl("f(f(f(b))) = g(g(b))");
    assert_eq!(demodulate(&c, &unit, DemodMode::ProperSubtermOnly, &cfg), Outcome::Unchanged);
    let Outcome::Replaced(after, _) = demodulate(&c, &unit, DemodMode::Full, &cfg) else { panic!("no rewrite") };
    assert_eq!(after, cl("g(g(b)) != c"));
    let r = GroundRewriteSystem::new(vec![
        (parse_term("f(b)").unwrap(), parse_term("b").unwrap()),
        (parse_term("g(g(b))").unwrap(), parse_term("b").unwrap()),
    ])
    .unwrap();
    let before = GroundClosure::ground(c);
    let after = GroundClosure::ground(after);
    assert_eq!(closure_compare(&cfg, &r, Variant::Horn, &after, &before).unwrap(), Comparison::Greater);
}

#[test]
fn condition_literal_rewriting() {
    let cfg = OrderingConfig::kbo_uniform();
    assert_eq!(parallel_cond_rewrite(&cl("a = b | f(a) = c"), &cfg), Outcome::Unchanged);
    assert_eq!(
        parallel_cond_rewrite(&cl("f(b) != b | g(f(b)) = d"), &cfg),
        Outcome::Replaced(cl("f(b) != b | g(b) = d"), SimpRule::CondRewrite)
    );
    assert_eq!(
        parallel_cond_rewrite(&cl("b != c | h(b) != d"), &example1()),
        Outcome::Replaced(cl("b != c | h(c) != d"), SimpRule::CondRewrite)
    );
}

#[test]
fn subsumption_modes() {
    assert!(subsumes(&cl("b = c"), &cl("b' = c' | b = c"), SubsumptionMode::Propositional));
    let c = cl("b = c");
    assert!(!subsumes(&c, &c, SubsumptionMode::Propositional));
    assert!(!subsumes(&c, &c, SubsumptionMode::FirstOrder));
    let general = cl("h(f(X)) = f(Y)");
    let special = cl("h(f(X)) = f(X)");
    assert!(subsumes(&general, &special, SubsumptionMode::FirstOrder));
    assert!(!subsumes(&general, &special, SubsumptionMode::Propositional));
    assert!(!subsumes(&special, &general, SubsumptionMode::FirstOrder));
    assert!(subsumes(&cl("f(X) = a"), &cl("f(Y) = a | b = c"), SubsumptionMode::Propositional));
    assert!(!subsumes(&cl("f(X) = a"), &cl("f(b) = a | b = c"), SubsumptionMode::Propositional));
    assert!(!subsumes(&c, &c, SubsumptionMode::Off));

    let cfg = OrderingConfig::kbo_uniform();
    let r = GroundRewriteSystem::new(vec![(parse_term("f(b)").unwrap(), parse_term("b").unwrap())]).unwrap();
    let (gc, gt) = parse_closure("h(f(X)) = f(Y)", "X -> b, Y -> b").unwrap();
    let (sc, st) = parse_closure("h(f(X)) = f(X)", "X -> b").unwrap();
    let big = GroundClosure::new(gc, gt).unwrap();
    let small = GroundClosure::new(sc, st).unwrap();
    assert_eq!(closure_compare(&cfg, &r, Variant::Horn, &small, &big).unwrap(), Comparison::Less);
}

#[test]
fn tautologies() {
    assert!(is_tautology(&cl("f(b) = f(b) | a = c")));
    assert!(is_tautology(&cl("b != c | b = c")));
    assert!(is_tautology(&cl("c != b | b = c")));
    assert!(!is_tautology(&cl("g(b) != c | f(c) != d")));
    assert!(is_tautology(&cl("b != c | f(b) = f(c)")));
    assert!(!is_tautology(&cl("X != c | f(X) = f(c)")));
}

#[test]
fn literal_cleanup() {
    assert_eq!(clean_literals(&cl("a = b | b = a | c = d")), Outcome::Replaced(cl("a = b | c = d"), SimpRule::DuplicateLiteral));
    assert_eq!(clean_literals(&cl("a != a | c = d")), Outcome::Replaced(cl("c = d"), SimpRule::TrivialLiteral));
    assert_eq!(clean_literals(&cl("a = b")), Outcome::Unchanged);
}
