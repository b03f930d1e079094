use std::fmt;
use std::time::{Duration, Instant};

use super::{saturate, Proof, ProverConfig, Status};
use crate::calculus::{equality_factoring, equality_resolution, parallel_superposition};
use crate::clause::Clause;
use crate::lab::ground_entails;
use crate::order::{Comparison, OrderingConfig};
use crate::problem::{parse, parse_clause, ProblemFile};
use crate::simplify::{der, is_tautology, DerMode, Outcome, Regime, RegimeConfig};
use crate::term::{Substitution, Term, Var};

const EXAMPLE1: &str = include_str!("../../../../problems/example1.p");

/// The five-clause incompleteness example with its ordering.
pub fn example1() -> ProblemFile {
    parse(EXAMPLE1).expect("bundled example parses")
}

#[derive(Clone, Debug)]
pub struct ReplayStep {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct IncompletenessReport {
    pub steps: Vec<ReplayStep>,
    pub classical: Option<Status>,
    pub horn: Option<Status>,
    pub horn_proof: Option<Proof>,
    pub elapsed: Duration,
}

impl IncompletenessReport {
    pub fn passed(&self) -> bool {
        self.steps.iter().all(|s| s.passed)
    }

    /// The first failing step.
    pub fn failure(&self) -> Option<&ReplayStep> {
        self.steps.iter().find(|s| !s.passed)
    }
}

impl fmt::Display for IncompletenessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.steps.iter().enumerate() {
            writeln!(f, "{}. [{}] {}: {}", i + 1, if s.passed { "PASS" } else { "FAIL" }, s.name, s.detail)?;
        }
        if let Some(st) = self.classical {
            writeln!(f, "classical regime with scripted deletion: {st}")?;
        }
        if let Some(st) = self.horn {
            writeln!(f, "horn-closure regime: {st}")?;
        }
        if let Some(p) = &self.horn_proof {
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

fn cl(s: &str) -> Clause {
    parse_clause(s).expect("built-in clause parses")
}

fn ground(c: &Clause, pairs: &[(u32, &str)]) -> Clause {
    let theta = Substitution::from_pairs(pairs.iter().map(|(v, t)| (Var(*v), Term::constant(t))));
    c.apply(&theta)
}

fn step(steps: &mut Vec<ReplayStep>, name: &str, passed: bool, detail: String) -> bool {
    steps.push(ReplayStep { name: name.to_string(), passed, detail });
    passed
}

/// Replays the incompleteness example step by step under `ord`.
pub fn replay_incompleteness(ord: &OrderingConfig) -> IncompletenessReport {
    let start = Instant::now();
    let problem = example1();
    let input: Vec<(String, Clause)> = problem.clauses.iter().map(|n| (n.name.clone(), n.clause.clone())).collect();
    let c: Vec<Clause> = input.iter().map(|(_, c)| c.clone()).collect();
    let c6 = cl("X != b | g(X) = d");
    let c7 = cl("g(b) = d");
    let c8 = cl("b' = c'");
    let mut steps = Vec::new();

    let mut next = 10;
    let c2 = c[1].rename_apart(&mut next);
    let sup = parallel_superposition(&c[0], &c2, ord);
    let got: Vec<String> = sup.iter().map(|i| i.conclusion.normalize_vars().to_string()).collect();
    step(
        &mut steps,
        "superposition of c1 into c2 yields C6",
        sup.len() == 1 && sup[0].conclusion.is_variant(&c6),
        format!("conclusions [{}]", got.join("; ")),
    );

    let der_out = der(&c6, DerMode::Full);
    step(
        &mut steps,
        "DER turns C6 into C7",
        der_out == Outcome::Replaced(c7.clone(), crate::simplify::SimpRule::Der),
        format!("{c6} => {}", der_out.replacement().map(|d| d.to_string()).unwrap_or_else(|| "unchanged".into())),
    );

    let base = vec![
        c[2].clone(),
        c[3].clone(),
        ground(&c[0], &[(0, "c")]),
        ground(&c[1], &[(0, "c"), (1, "d")]),
    ];
    let not_smaller: Vec<String> = base
        .iter()
        .filter(|b| ord.compare_clauses(b, &c7) != Comparison::Less)
        .map(|b| b.to_string())
        .collect();
    let entailed = ground_entails(&base, &c7);
    let names: Vec<String> = base.iter().map(|b| b.to_string()).collect();
    let redundant = step(
        &mut steps,
        "C7 follows from smaller ground instances",
        entailed && not_smaller.is_empty(),
        if not_smaller.is_empty() {
            format!("entailment base {{{}}}, entailed: {entailed}", names.join(", "))
        } else {
            format!("side condition fails: not smaller than C7: {}", not_smaller.join(", "))
        },
    );

    let mut conclusions: Vec<Clause> = Vec::new();
    for (i, ci) in c.iter().enumerate() {
        conclusions.extend(equality_resolution(ci, ord).into_iter().map(|x| x.conclusion));
        conclusions.extend(equality_factoring(ci, ord).into_iter().map(|x| x.conclusion));
        for cj in &c[i..] {
            let mut next = 100;
            let cj = cj.rename_apart(&mut next);
            conclusions.extend(parallel_superposition(ci, &cj, ord).into_iter().map(|x| x.conclusion));
            conclusions.extend(parallel_superposition(&cj, ci, ord).into_iter().map(|x| x.conclusion));
        }
    }
    let tautologies = conclusions.iter().filter(|x| is_tautology(x)).count();
    let to_c6 = conclusions.iter().filter(|x| x.is_variant(&c6)).count();
    let open: Vec<String> = conclusions
        .iter()
        .filter(|x| !is_tautology(x) && !x.is_variant(&c6))
        .map(|x| x.normalize_vars().to_string())
        .collect();
    step(
        &mut steps,
        "no non-redundant inference remains after deleting C7",
        redundant && open.is_empty(),
        format!(
            "{} inferences: {tautologies} tautologies, {to_c6} yielding C6 (DER gives the deleted C7), {} others{}",
            conclusions.len(),
            open.len(),
            if open.is_empty() { String::new() } else { format!(": {}", open.join("; ")) }
        ),
    );

    let mut classical_cfg = ProverConfig::new(ord.clone(), RegimeConfig::defaults(Regime::Classical));
    classical_cfg.regime.der = DerMode::Full;
    if redundant {
        classical_cfg.scripted_deletions.push(c7.clone());
    }
    classical_cfg.limits.timeout = Duration::from_secs(5);
    let classical = saturate(&input, &classical_cfg).ok().map(|r| r.status);
    step(
        &mut steps,
        "classical regime with C7 deleted saturates without the empty clause",
        classical == Some(Status::Saturated),
        format!("status {}", classical.map(|s| s.to_string()).unwrap_or_else(|| "error".into())),
    );

    let mut horn_cfg = ProverConfig::new(ord.clone(), RegimeConfig::defaults(Regime::HornClosure));
    horn_cfg.limits.timeout = Duration::from_secs(5);
    let horn_result = saturate(&input, &horn_cfg).ok();
    let horn = horn_result.as_ref().map(|r| r.status);
    let proof = horn_result.and_then(|r| r.proof);
    let missing: Vec<&str> = [("C6", &c6), ("C7", &c7), ("C8", &c8), ("empty clause", &Clause::empty())]
        .iter()
        .filter(|(_, x)| !proof.as_ref().is_some_and(|p| p.contains_variant(x)))
        .map(|(n, _)| *n)
        .collect();
    step(
        &mut steps,
        "horn-closure regime keeps C7 and derives the empty clause",
        horn == Some(Status::Unsatisfiable) && missing.is_empty(),
        format!(
            "status {}{}",
            horn.map(|s| s.to_string()).unwrap_or_else(|| "error".into()),
            if missing.is_empty() { ", proof contains C6, C7, C8".to_string() } else { format!(", proof lacks {}", missing.join(", ")) }
        ),
    );

    IncompletenessReport { steps, classical, horn, horn_proof: proof, elapsed: start.elapsed() }
}
