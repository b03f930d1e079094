use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use supder_core::gen::horn_closure_problem;
use supder_core::lab::props::{self, CaseResult};
use supder_core::model::{check_saturation, SaturationCheck};
use supder_core::problem::{parse_clause, parse_closure, parse_term};
use supder_core::rewrite::{closure_compare, compare_nm_horn, nm_horn, GroundClosure, GroundRewriteSystem, Variant};
use supder_core::saturation::{example1, replay_incompleteness, saturate, ProverConfig};
use supder_core::simplify::{subsumes, Regime, RegimeConfig, SubsumptionMode};
use supder_core::{Comparison, OrderingConfig, Term};

type Outcome = Result<String, String>;

fn problems() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../problems")
}

fn supder(args: &[&str]) -> Result<(String, Duration), String> {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_supder"))
        .args(args)
        .current_dir(problems())
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    if !out.status.success() {
        return Err(format!("exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
    }
    Ok((String::from_utf8_lossy(&out.stdout).into_owned(), elapsed))
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn incompleteness_replay() -> Outcome {
    let p = example1();
    let weights = [("f", 4), ("g", 3), ("b", 4), ("b'", 2), ("c", 1), ("c'", 1), ("d", 1)];
    for (s, w) in weights {
        ensure(p.ordering.weight(supder_core::Symbol::intern(s)) == w, format!("weight of {s} is not {w}"))?;
    }
    ensure(p.ordering.var_weight == 1, "variable weight is not 1")?;
    let report = replay_incompleteness(&p.ordering);
    if let Some(f) = report.failure() {
        return Err(format!("{}: {}", f.name, f.detail));
    }
    let (out, elapsed) = supder(&["demo", "incompleteness"])?;
    ensure(out.contains("RESULT: replay confirmed"), "demo did not confirm the replay")?;
    ensure(out.matches("[PASS]").count() == report.steps.len(), "demo output lacks a passing step")?;
    ensure(elapsed < Duration::from_secs(1), format!("demo took {elapsed:?}"))?;
    Ok(format!("{} steps confirmed; demo ran in {elapsed:.2?}", report.steps.len()))
}

fn completeness_branch() -> Outcome {
    let (out, elapsed) = supder(&["prove", "example1.p", "--regime", "horn-closure", "--der", "full", "--proof"])?;
    ensure(out.lines().next() == Some("STATUS: Unsatisfiable"), "status is not Unsatisfiable")?;
    let generated: usize = out
        .lines()
        .find_map(|l| l.strip_prefix("% generated clauses: "))
        .and_then(|n| n.parse().ok())
        .ok_or("no generated-clause count")?;
    ensure(generated <= 200, format!("{generated} clauses generated"))?;
    ensure(elapsed < Duration::from_secs(1), format!("run took {elapsed:?}"))?;
    let p = example1();
    let input: Vec<_> = p.clauses.iter().map(|c| (c.name.clone(), c.clause.clone())).collect();
    let result = saturate(&input, &ProverConfig::new(p.ordering.clone(), RegimeConfig::defaults(Regime::HornClosure)))
        .map_err(|e| e.to_string())?;
    let proof = result.proof.ok_or("no proof")?;
    for c in ["X != b | g(X) = d", "g(b) = d", "b' = c'", "$false"] {
        ensure(proof.contains_variant(&parse_clause(c).unwrap()), format!("proof lacks {c}"))?;
    }
    ensure(out.lines().nth(2).is_some_and(|l| l.ends_with("$false")), "printed proof does not end in the empty clause")?;
    Ok(format!("Unsatisfiable, {generated} generated clauses, {elapsed:.2?}"))
}

fn t(s: &str) -> Term {
    parse_term(s).unwrap()
}

fn sys(rules: &[(&str, &str)]) -> GroundRewriteSystem {
    GroundRewriteSystem::new(rules.iter().map(|(l, r)| (t(l), t(r))).collect()).unwrap()
}

fn labeled(items: &[(&str, u8)]) -> Vec<(Term, u8)> {
    let mut v: Vec<(Term, u8)> = items.iter().map(|(s, m)| (t(s), *m)).collect();
    v.sort();
    v
}

fn worked_multisets() -> Outcome {
    let r = sys(&[("f(b)", "b"), ("g(g(b))", "b")]);
    let (c, th) = parse_closure("h(g(g(X))) = f(f(b))", "X -> b").unwrap();
    let got = nm_horn(&r, &c, &th).map_err(|e| e.to_string())?;
    ensure(got == labeled(&[("g(g(b))", 1), ("f(b)", 1), ("f(b)", 0), ("h(b)", 0), ("b", 0)]), format!("first multiset {got:?}"))?;
    let r = sys(&[("f(b)", "b")]);
    let (c, th) = parse_closure("h(f(X)) = f(Y)", "X -> b, Y -> b").unwrap();
    let got = nm_horn(&r, &c, &th).map_err(|e| e.to_string())?;
    ensure(got == labeled(&[("f(b)", 1), ("f(b)", 0), ("h(b)", 0), ("b", 0)]), format!("four-element multiset {got:?}"))?;
    let (c, th) = parse_closure("h(f(X)) = f(X)", "X -> b").unwrap();
    let got = nm_horn(&r, &c, &th).map_err(|e| e.to_string())?;
    ensure(got == labeled(&[("f(b)", 1), ("h(b)", 0), ("b", 0)]), format!("three-element multiset {got:?}"))?;
    Ok("5-element and 4-vs-3-element multisets reproduced".into())
}

fn demodulation_counterexample() -> Outcome {
    let cfg = OrderingConfig::kbo_uniform();
    let r = sys(&[("f(b)", "b"), ("g(g(b))", "b")]);
    let (before, e) = parse_closure("f(f(f(b))) != c", "").unwrap();
    let (after, _) = parse_closure("g(g(b)) != c", "").unwrap();
    let nb = nm_horn(&r, &before, &e).map_err(|e| e.to_string())?;
    let na = nm_horn(&r, &after, &e).map_err(|e| e.to_string())?;
    let o = compare_nm_horn(&cfg, &na, &nb);
    ensure(o == Comparison::Greater, format!("nm(g(g(b)) != c) is {o} than nm(f(f(f(b))) != c)"))?;
    Ok(format!("{} labeled redexes vs {}: Greater", na.len(), nb.len()))
}

fn lemma_suites() -> Outcome {
    type Case = fn(&mut ChaCha8Rng, &OrderingConfig) -> CaseResult;
    let suites: [(&str, Case); 10] = [
        ("rm strategy independence", |r, c| props::rm_strategy_independence(r, c)),
        ("instance ordering horn", |r, c| props::instance_ordering(r, c, Variant::Horn)),
        ("instance ordering nonhorn", |r, c| props::instance_ordering(r, c, Variant::NonHorn)),
        ("inferences reduce horn", |r, c| props::inference_reduces(r, c, Variant::Horn)),
        ("inferences reduce nonhorn", |r, c| props::inference_reduces(r, c, Variant::NonHorn)),
        ("der reduces horn", |r, c| props::der_reduces(r, c, Variant::Horn)),
        ("negative-only der reduces nonhorn", |r, c| props::der_reduces(r, c, Variant::NonHorn)),
        ("closure order total horn", |r, c| props::closure_order_total(r, c, Variant::Horn)),
        ("closure order total nonhorn", |r, c| props::closure_order_total(r, c, Variant::NonHorn)),
        ("candidate interpretation", |r, c| props::candidate_interpretation(r, c)),
    ];
    let start = Instant::now();
    let cfg = OrderingConfig::kbo_uniform();
    let mut total = 0;
    for (i, (name, case)) in suites.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + i as u64);
        let mut checks = 0;
        for k in 0..1000 {
            checks += case(&mut rng, &cfg).map_err(|e| format!("{name}, case {k}: {e}"))?;
        }
        ensure(checks > 0, format!("{name} made no comparisons"))?;
        total += checks;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), format!("suites took {elapsed:?}"))?;
    Ok(format!("{} suites x 1000 cases, {total} comparisons, {elapsed:.2?}", suites.len()))
}

fn saturation_models() -> Outcome {
    let start = Instant::now();
    let cfg = OrderingConfig::kbo_uniform();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut models, mut refuted) = (0, 0);
    for i in 0..100 {
        let n = horn_closure_problem(&mut rng, 8, 2);
        match check_saturation(&n, &cfg, 5000).map_err(|e| format!("problem {i}: {e}"))? {
            SaturationCheck::Model { .. } => models += 1,
            SaturationCheck::Refuted { .. } => refuted += 1,
            SaturationCheck::Capped => return Err(format!("problem {i} hit the closure cap")),
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(120), format!("took {elapsed:?}"))?;
    Ok(format!("{models} models verified, {refuted} refutations confirmed, {elapsed:.2?}"))
}

fn subsumption_hazard() -> Outcome {
    let cfg = OrderingConfig::kbo_uniform();
    let c = parse_clause("h(f(X)) = f(Y)").unwrap();
    let cs = parse_clause("h(f(X)) = f(X)").unwrap();
    ensure(subsumes(&c, &cs, SubsumptionMode::FirstOrder), "C does not first-order subsume C sigma")?;
    let (_, th) = parse_closure("h(f(X)) = f(Y)", "X -> b, Y -> b").unwrap();
    let (_, th2) = parse_closure("h(f(X)) = f(X)", "X -> b").unwrap();
    let general = GroundClosure::new(c, th).unwrap();
    let special = GroundClosure::new(cs, th2).unwrap();
    let r = sys(&[("f(b)", "b")]);
    let o = closure_compare(&cfg, &r, Variant::Horn, &special, &general).map_err(|e| e.to_string())?;
    ensure(o == Comparison::Less, format!("subsumed closure is {o}"))?;
    Ok("subsumes = true, subsumed closure ranks Less".into())
}

fn smoke_suite() -> Outcome {
    let dir = problems().join("smoke");
    let mut files: Vec<PathBuf> = std::fs::read_dir(&dir)
        .map_err(|e| e.to_string())?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "p"))
        .collect();
    files.sort();
    ensure(files.len() == 20, format!("{} smoke problems", files.len()))?;
    let mut slowest = Duration::ZERO;
    for f in &files {
        let path = f.to_string_lossy();
        let (out, elapsed) = supder(&["prove", &path, "--regime", "horn-closure", "--der", "full", "--timeout-s", "5"])?;
        let name = f.file_name().unwrap().to_string_lossy();
        ensure(out.lines().next() == Some("STATUS: Unsatisfiable"), format!("{name}: {}", out.lines().next().unwrap_or("")))?;
        ensure(elapsed < Duration::from_secs(5), format!("{name} took {elapsed:?}"))?;
        slowest = slowest.max(elapsed);
    }
    Ok(format!("20/20 Unsatisfiable, slowest {slowest:.2?}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("incompleteness replay", incompleteness_replay),
        ("completeness branch", completeness_branch),
        ("worked-example multisets", worked_multisets),
        ("demodulation counterexample", demodulation_counterexample),
        ("lemma property suites", lemma_suites),
        ("saturation yields models", saturation_models),
        ("first-order subsumption hazard", subsumption_hazard),
        ("prover smoke suite", smoke_suite),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        match result {
            Ok(detail) => println!("criterion {}: PASS  {name} [{elapsed:.2?}] {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} [{elapsed:.2?}] {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
