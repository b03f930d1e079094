use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use supder_core::lab::props::{self, CaseResult};
use supder_core::rewrite::Variant;
use supder_core::OrderingConfig;

const CASES: u64 = 1000;

fn run(name: &str, seed: u64, mut case: impl FnMut(&mut ChaCha8Rng, &OrderingConfig) -> CaseResult) {
    let cfg = OrderingConfig::kbo_uniform();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = 0;
    for i in 0..CASES {
        match case(&mut rng, &cfg) {
            Ok(n) => checks += n,
            Err(e) => panic!("{name}, case {i}: {e}"),
        }
    }
    assert!(checks > 0, "{name}: no comparisons were made");
    eprintln!("{name}: {checks} comparisons");
}

#[test]
fn rm_is_strategy_independent() {
    run("rm strategy", 1, |r, c| props::rm_strategy_independence(r, c));
}

#[test]
fn general_closure_above_instance_horn() {
    run("instances horn", 2, |r, c| props::instance_ordering(r, c, Variant::Horn));
}

#[test]
fn general_closure_above_instance_nonhorn() {
    run("instances nonhorn", 3, |r, c| props::instance_ordering(r, c, Variant::NonHorn));
}

#[test]
fn horn_inferences_reduce() {
    run("inferences horn", 4, |r, c| props::inference_reduces(r, c, Variant::Horn));
}

#[test]
fn nonhorn_inferences_reduce() {
    run("inferences nonhorn", 5, |r, c| props::inference_reduces(r, c, Variant::NonHorn));
}

#[test]
fn der_reduces_horn() {
    run("der horn", 6, |r, c| props::der_reduces(r, c, Variant::Horn));
}

#[test]
fn negative_only_der_reduces_nonhorn() {
    run("der nonhorn", 7, |r, c| props::der_reduces(r, c, Variant::NonHorn));
}

#[test]
fn closure_order_is_strict_total_horn() {
    run("total horn", 8, |r, c| props::closure_order_total(r, c, Variant::Horn));
}

#[test]
fn closure_order_is_strict_total_nonhorn() {
    run("total nonhorn", 9, |r, c| props::closure_order_total(r, c, Variant::NonHorn));
}

#[test]
fn candidate_interpretation_lemmas() {
    run("candidate interpretation", 10, |r, c| props::candidate_interpretation(r, c));
}
