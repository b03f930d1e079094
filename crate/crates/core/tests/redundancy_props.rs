use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use supder_core::calculus::{equality_resolution, ground_inferences, parallel_superposition, ClosureInference};
use supder_core::clause::{match_literals, MatchMode};
use supder_core::gen::{self, Signature};
use supder_core::lab::{classically_redundant, ground_instances, Lab, LabError, Universe, Verdict};
use supder_core::rewrite::{GroundClosure, Variant};
use supder_core::{Clause, Literal, OrderingConfig};

const CAP: usize = 4000;

fn tiny() -> Signature {
    Signature::new(&[("a", 0), ("b", 0), ("f", 1), ("g", 1)])
}

fn closure(rng: &mut ChaCha8Rng, sig: &Signature) -> GroundClosure {
    let c = gen::clause(rng, sig, 1, 2, 2, true);
    let theta = gen::grounding(rng, sig, &c, 1);
    GroundClosure::new(c, theta).unwrap()
}

/// A closure set where every closure also appears weakened by an extra
/// negative literal, so that redundant members exist.
fn weakened_set(rng: &mut ChaCha8Rng, sig: &Signature) -> Vec<GroundClosure> {
    let base: Vec<GroundClosure> = (0..rng.gen_range(1..=2)).map(|_| closure(rng, sig)).collect();
    let mut n = base.clone();
    for b in &base {
        let mut lits = b.clause.lits.clone();
        lits.push(Literal { lhs: gen::ground_term(rng, sig, 1), rhs: gen::ground_term(rng, sig, 1), positive: false });
        n.push(GroundClosure::new(Clause::new(lits), b.theta.clone()).unwrap());
    }
    n
}

fn lab_for(n: &[GroundClosure], extra: &[&GroundClosure]) -> Lab {
    let mut inst: Vec<Clause> = n.iter().map(|c| c.instance()).collect();
    inst.extend(extra.iter().map(|c| c.instance()));
    Lab::new(OrderingConfig::kbo_uniform(), Universe::of_clauses(&inst), CAP)
}

fn decided(v: Result<Verdict, LabError>) -> Option<bool> {
    match v {
        Ok(v) => Some(v.redundant),
        Err(LabError::TooManySystems { .. }) => None,
        Err(e) => panic!("{e}"),
    }
}

#[test]
fn closure_redundancy_is_monotone_and_stable_under_deletion() {
    let sig = tiny();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let (mut monotone, mut stable) = (0, 0);
    for _ in 0..150 {
        let n = weakened_set(&mut rng, &sig);
        let more = closure(&mut rng, &sig);
        let lab = lab_for(&n, &[&more]);
        let mut bigger = n.clone();
        bigger.push(more.clone());
        for c in &n {
            if decided(lab.closure_redundant(c, &n, Variant::Horn)) == Some(true) {
                assert_eq!(decided(lab.closure_redundant(c, &bigger, Variant::Horn)), Some(true), "{c} after adding {more}");
                monotone += 1;
            }
        }
        for (i, d) in n.iter().enumerate() {
            if decided(lab.closure_redundant(d, &n, Variant::Horn)) != Some(true) {
                continue;
            }
            let mut rest = n.clone();
            rest.remove(i);
            for c in &rest {
                if decided(lab.closure_redundant(c, &n, Variant::Horn)) == Some(true) {
                    assert_eq!(decided(lab.closure_redundant(c, &rest, Variant::Horn)), Some(true), "{c} after deleting {d}");
                    stable += 1;
                }
            }
        }
    }
    eprintln!("monotone {monotone}, stable {stable}");
    assert!(monotone > 20 && stable > 5);
}

#[test]
fn inference_with_conclusion_in_n_is_redundant() {
    let sig = tiny();
    let cfg = OrderingConfig::kbo_uniform();
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let mut checked = 0;
    for _ in 0..300 {
        let n: Vec<GroundClosure> = (0..rng.gen_range(1..=3)).map(|_| closure(&mut rng, &sig)).collect();
        for inf in ground_inferences(&n, &cfg, false) {
            let mut with = n.clone();
            with.push(inf.conclusion.clone());
            let lab = lab_for(&with, &[]);
            if let Some(r) = decided(lab.inference_redundant(&inf, &with, Variant::Horn)) {
                assert!(r, "{} inference to {}", inf.rule, inf.conclusion);
                checked += 1;
            }
        }
    }
    eprintln!("checked {checked}");
    assert!(checked > 20);
}

#[test]
fn classical_redundancy_is_monotone_in_n() {
    let sig = tiny();
    let cfg = OrderingConfig::kbo_uniform();
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut hits = 0;
    for _ in 0..500 {
        let n: Vec<Clause> = (0..4).map(|_| gen::clause(&mut rng, &sig, 1, 0, 2, false)).collect();
        let c = gen::clause(&mut rng, &sig, 1, 0, 2, false);
        if classically_redundant(&c, &n, &cfg) {
            hits += 1;
            let mut more = n.clone();
            more.push(gen::clause(&mut rng, &sig, 1, 0, 2, false));
            assert!(classically_redundant(&c, &more, &cfg));
        }
    }
    assert!(hits > 0);
}

fn lifted(inf: &ClosureInference, clauses: &[Clause], cfg: &OrderingConfig) -> bool {
    let target = inf.conclusion.instance();
    let mut concls: Vec<Clause> = Vec::new();
    for c in clauses {
        concls.extend(equality_resolution(c, cfg).into_iter().map(|i| i.conclusion));
        for d in clauses {
            let mut next = 50;
            let d = d.rename_apart(&mut next);
            concls.extend(parallel_superposition(&d, c, cfg).into_iter().map(|i| i.conclusion));
        }
    }
    concls.iter().any(|k| k.len() == target.len() && match_literals(&k.lits, &target.lits, MatchMode::Instance))
}

#[test]
fn ground_inferences_lift_or_are_redundant() {
    let sig = tiny();
    let cfg = OrderingConfig::kbo_uniform();
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    let universe = Universe::from_terms(
        ["a", "b", "f(a)"].iter().map(|s| supder_core::problem::parse_term(s).unwrap()).collect::<Vec<_>>().iter(),
    );
    let (mut lifted_count, mut redundant_count) = (0, 0);
    for _ in 0..100 {
        let clauses: Vec<Clause> = (0..2).map(|_| gen::clause(&mut rng, &sig, 1, 1, 2, true)).collect();
        let g: Vec<GroundClosure> = clauses.iter().flat_map(|c| ground_instances(c, &universe)).collect();
        for inf in ground_inferences(&g, &cfg, false) {
            if lifted(&inf, &clauses, &cfg) {
                lifted_count += 1;
                continue;
            }
            let lab = lab_for(&g, &[&inf.conclusion]);
            if let Some(r) = decided(lab.inference_redundant(&inf, &g, Variant::Horn)) {
                assert!(r, "{} inference to {} from {:?} neither lifts nor is redundant", inf.rule, inf.conclusion, clauses);
                redundant_count += 1;
            }
        }
    }
    eprintln!("lifted {lifted_count}, redundant {redundant_count}");
    assert!(lifted_count > 20);
}
