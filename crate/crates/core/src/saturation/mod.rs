//! Given-clause saturation with regime-controlled simplification.

mod proof;
mod replay;

use std::collections::{BTreeSet, BinaryHeap, HashSet, VecDeque};
use std::cmp::Reverse;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::calculus::{equality_factoring, equality_resolution, parallel_superposition_with, RuleTag, SupGuard};
use crate::clause::Clause;
use crate::order::{OrderError, OrderingConfig};
use crate::simplify::{
    clean_literals, demodulate, der, is_tautology, parallel_cond_rewrite, subsumes, Outcome, RegimeConfig,
    RegimeError, SimpRule,
};

pub use proof::{replay_proof, Proof, ProofLine};
pub use replay::{example1, replay_incompleteness, IncompletenessReport, ReplayStep};

#[derive(Debug, Error)]
pub enum ProverError {
    #[error("inadmissible ordering: {0}")]
    Ordering(#[from] OrderError),
    #[error(transparent)]
    Regime(#[from] RegimeError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Unsatisfiable,
    Saturated,
    ResourceOut,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Unsatisfiable => "Unsatisfiable",
            Status::Saturated => "Saturated",
            Status::ResourceOut => "ResourceOut",
        })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Limits {
    /// Cap on clauses generated by inferences and simplifications.
    pub max_clauses: usize,
    pub timeout: Duration,
}

impl Default for Limits {
    fn default() -> Limits {
        Limits { max_clauses: 100_000, timeout: Duration::from_secs(60) }
    }
}

#[derive(Clone, Debug)]
pub struct ProverConfig {
    pub ordering: OrderingConfig,
    pub regime: RegimeConfig,
    pub limits: Limits,
    pub guard: SupGuard,
    /// Accept regime/flag combinations that the licensing matrix blocks.
    pub force: bool,
    /// Clauses deleted on sight, up to renaming, after an external check.
    pub scripted_deletions: Vec<Clause>,
}

impl ProverConfig {
    pub fn new(ordering: OrderingConfig, regime: RegimeConfig) -> ProverConfig {
        ProverConfig {
            ordering,
            regime,
            limits: Limits::default(),
            guard: SupGuard::Relaxed,
            force: false,
            scripted_deletions: Vec::new(),
        }
    }
}

/// How a journal entry came about.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    Input(String),
    Inference(RuleTag, Vec<usize>),
    /// The simplified clause comes first, then the side clauses used.
    Simplification(SimpRule, Vec<usize>),
}

impl Step {
    pub fn premises(&self) -> &[usize] {
        match self {
            Step::Input(_) => &[],
            Step::Inference(_, p) | Step::Simplification(_, p) => p,
        }
    }
}

#[derive(Clone, Debug)]
pub struct JournalEntry {
    pub clause: Clause,
    pub step: Step,
}

/// A deletion recorded in the journal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deletion {
    pub id: usize,
    pub rule: String,
    pub by: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct ProverResult {
    pub status: Status,
    pub proof: Option<Proof>,
    /// The active clauses when saturated.
    pub final_clauses: Vec<Clause>,
    pub generated: usize,
    pub journal: Vec<JournalEntry>,
    pub deletions: Vec<Deletion>,
    pub warnings: Vec<String>,
}

struct Prover<'a> {
    cfg: &'a ProverConfig,
    journal: Vec<JournalEntry>,
    deletions: Vec<Deletion>,
    deleted: HashSet<usize>,
    active: Vec<usize>,
    by_weight: BinaryHeap<Reverse<(usize, usize)>>,
    by_age: VecDeque<usize>,
    queued: BTreeSet<usize>,
    picks: usize,
    next_var: u32,
    generated: usize,
}

impl<'a> Prover<'a> {
    fn add(&mut self, clause: &Clause, step: Step) -> usize {
        let clause = clause.rename_apart(&mut self.next_var);
        if !matches!(step, Step::Input(_)) {
            self.generated += 1;
        }
        self.journal.push(JournalEntry { clause, step });
        self.journal.len() - 1
    }

    fn enqueue(&mut self, id: usize) {
        self.by_weight.push(Reverse((self.journal[id].clause.weight(), id)));
        self.by_age.push_back(id);
        self.queued.insert(id);
    }

    fn pick(&mut self) -> Option<usize> {
        while !self.queued.is_empty() {
            self.picks += 1;
            let id = if self.picks % 5 == 0 {
                self.by_age.pop_front()
            } else {
                self.by_weight.pop().map(|Reverse((_, id))| id)
            };
            let Some(id) = id else { continue };
            if self.queued.remove(&id) {
                return Some(id);
            }
        }
        None
    }

    fn delete(&mut self, id: usize, rule: &str, by: Vec<usize>) {
        self.deleted.insert(id);
        self.deletions.push(Deletion { id, rule: rule.to_string(), by });
    }

    fn clause(&self, id: usize) -> &Clause {
        &self.journal[id].clause
    }

    /// Forward simplification to a fixpoint. Returns the surviving id.
    fn forward(&mut self, mut id: usize) -> Option<usize> {
        let regime = self.cfg.regime;
        let ord = &self.cfg.ordering;
        loop {
            let c = self.clause(id).clone();
            if let Outcome::Replaced(d, rule) = clean_literals(&c) {
                id = self.add(&d, Step::Simplification(rule, vec![id]));
                continue;
            }
            if regime.tautology && is_tautology(&c) {
                self.delete(id, "taut", vec![]);
                return None;
            }
            if self.cfg.scripted_deletions.iter().any(|s| s.is_variant(&c)) {
                self.delete(id, "oracle", vec![]);
                return None;
            }
            let subsumer = self.active.iter().copied().find(|&a| {
                let ac = self.clause(a);
                ac.is_variant(&c) || subsumes(ac, &c, regime.subsumption)
            });
            if let Some(a) = subsumer {
                self.delete(id, "subsume", vec![a]);
                return None;
            }
            let mut replaced = None;
            for &a in &self.active {
                let unit = self.clause(a);
                if unit.len() == 1 && unit.lits[0].positive {
                    if let Outcome::Replaced(d, rule) = demodulate(&c, unit, regime.demod, ord) {
                        replaced = Some((d, rule, vec![id, a]));
                        break;
                    }
                }
            }
            if replaced.is_none() && regime.parallel_cond_rewrite {
                if let Outcome::Replaced(d, rule) = parallel_cond_rewrite(&c, ord) {
                    replaced = Some((d, rule, vec![id]));
                }
            }
            if replaced.is_none() {
                if let Outcome::Replaced(d, rule) = der(&c, regime.der) {
                    replaced = Some((d, rule, vec![id]));
                }
            }
            match replaced {
                Some((d, rule, premises)) => id = self.add(&d, Step::Simplification(rule, premises)),
                None => return Some(id),
            }
        }
    }

    /// Simplifies active clauses with the new clause `g`.
    fn backward(&mut self, g: usize) {
        let regime = self.cfg.regime;
        let given = self.clause(g).clone();
        let unit = given.len() == 1 && given.lits[0].positive;
        let mut keep = Vec::new();
        for a in std::mem::take(&mut self.active) {
            let c = self.clause(a).clone();
            if subsumes(&given, &c, regime.subsumption) {
                self.delete(a, "subsume", vec![g]);
                continue;
            }
            if unit {
                if let Outcome::Replaced(d, rule) = demodulate(&c, &given, regime.demod, &self.cfg.ordering) {
                    self.delete(a, "demod", vec![g]);
                    let id = self.add(&d, Step::Simplification(rule, vec![a, g]));
                    self.enqueue(id);
                    continue;
                }
            }
            keep.push(a);
        }
        self.active = keep;
    }

    fn infer(&mut self, g: usize) -> Vec<(Clause, Step)> {
        let ord = &self.cfg.ordering;
        let c = self.clause(g).clone();
        let mut out = Vec::new();
        for i in equality_resolution(&c, ord) {
            out.push((i.conclusion, Step::Inference(RuleTag::EqualityResolution, vec![g])));
        }
        for i in equality_factoring(&c, ord) {
            out.push((i.conclusion, Step::Inference(RuleTag::EqualityFactoring, vec![g])));
        }
        for &a in &self.active {
            let other = if a == g {
                let mut next = self.next_var;
                c.rename_apart(&mut next)
            } else {
                self.clause(a).clone()
            };
            for i in parallel_superposition_with(&other, &c, ord, self.cfg.guard) {
                out.push((i.conclusion, Step::Inference(RuleTag::Superposition, vec![a, g])));
            }
            if a != g {
                for i in parallel_superposition_with(&c, &other, ord, self.cfg.guard) {
                    out.push((i.conclusion, Step::Inference(RuleTag::Superposition, vec![g, a])));
                }
            }
        }
        out
    }

    fn finish(self, status: Status, empty: Option<usize>, warnings: Vec<String>) -> ProverResult {
        let proof = empty.map(|id| Proof::extract(&self.journal, id));
        let final_clauses = if status == Status::Saturated {
            self.active.iter().map(|&a| self.journal[a].clause.normalize_vars()).collect()
        } else {
            Vec::new()
        };
        ProverResult {
            status,
            proof,
            final_clauses,
            generated: self.generated,
            journal: self.journal,
            deletions: self.deletions,
            warnings,
        }
    }
}

/// Runs the given-clause loop on named input clauses.
pub fn saturate(input: &[(String, Clause)], cfg: &ProverConfig) -> Result<ProverResult, ProverError> {
    let mut signature = Vec::new();
    for (_, c) in input {
        for s in c.symbols() {
            if !signature.contains(&s) {
                signature.push(s);
            }
        }
    }
    cfg.ordering.validate(&signature)?;
    let mut warnings = cfg.regime.validate(cfg.force)?;
    if cfg.regime.regime == crate::simplify::Regime::HornClosure && input.iter().any(|(_, c)| !c.is_horn()) {
        warnings.push("input is not Horn; the horn-closure regime is only known to be complete for Horn clauses".into());
    }
    let start = Instant::now();
    let mut p = Prover {
        cfg,
        journal: Vec::new(),
        deletions: Vec::new(),
        deleted: HashSet::new(),
        active: Vec::new(),
        by_weight: BinaryHeap::new(),
        by_age: VecDeque::new(),
        queued: BTreeSet::new(),
        picks: 0,
        next_var: 0,
        generated: 0,
    };
    for (name, c) in input {
        let id = p.add(c, Step::Input(name.clone()));
        p.enqueue(id);
    }
    while let Some(id) = p.pick() {
        if p.deleted.contains(&id) {
            continue;
        }
        if p.generated > cfg.limits.max_clauses || start.elapsed() > cfg.limits.timeout {
            return Ok(p.finish(Status::ResourceOut, None, warnings));
        }
        let Some(g) = p.forward(id) else { continue };
        if p.clause(g).is_empty() {
            return Ok(p.finish(Status::Unsatisfiable, Some(g), warnings));
        }
        p.backward(g);
        p.active.push(g);
        for (c, step) in p.infer(g) {
            let cid = p.add(&c, step);
            if c.is_empty() {
                return Ok(p.finish(Status::Unsatisfiable, Some(cid), warnings));
            }
            p.enqueue(cid);
        }
    }
    Ok(p.finish(Status::Saturated, None, warnings))
}

#[cfg(test)]
mod tests;
