use std::collections::{BTreeMap, HashSet};
use std::fmt;

use super::{JournalEntry, Step};
use crate::calculus::{equality_factoring, equality_resolution, parallel_superposition_with, RuleTag, SupGuard};
use crate::clause::Clause;
use crate::order::OrderingConfig;
use crate::simplify::{clean_literals, demodulate, der, parallel_cond_rewrite, Outcome, RegimeConfig, SimpRule};

#[derive(Clone, Debug)]
pub struct ProofLine {
    pub id: usize,
    pub clause: Clause,
    pub step: Step,
}

/// The derivation of the empty clause, restricted to the steps it uses.
#[derive(Clone, Debug)]
pub struct Proof {
    pub root: usize,
    pub lines: BTreeMap<usize, ProofLine>,
}

impl Proof {
    pub fn extract(journal: &[JournalEntry], root: usize) -> Proof {
        let mut lines = BTreeMap::new();
        let mut todo = vec![root];
        while let Some(id) = todo.pop() {
            if lines.contains_key(&id) {
                continue;
            }
            let e = &journal[id];
            todo.extend(e.step.premises().iter().copied());
            lines.insert(id, ProofLine { id, clause: e.clause.clone(), step: e.step.clone() });
        }
        Proof { root, lines }
    }

    pub fn clauses(&self) -> impl Iterator<Item = &Clause> {
        self.lines.values().map(|l| &l.clause)
    }

    pub fn contains_variant(&self, c: &Clause) -> bool {
        self.clauses().any(|d| d.is_variant(c))
    }

    fn write_node(&self, f: &mut fmt::Formatter<'_>, id: usize, depth: usize, seen: &mut HashSet<usize>) -> fmt::Result {
        let line = &self.lines[&id];
        let (tag, premises) = match &line.step {
            Step::Input(name) => (format!("input {name}"), vec![]),
            Step::Inference(rule, p) => (rule.to_string(), p.clone()),
            Step::Simplification(rule, p) => (rule.to_string(), p.clone()),
        };
        let ps: Vec<String> = premises.iter().map(|p| p.to_string()).collect();
        let indent = "  ".repeat(depth);
        let clause = line.clause.normalize_vars();
        if !seen.insert(id) {
            return writeln!(f, "{indent}[{id}] {clause} (see above)");
        }
        if ps.is_empty() {
            writeln!(f, "{indent}[{id}] {tag}: {clause}")?;
        } else {
            writeln!(f, "{indent}[{id}] {tag}({}): {clause}", ps.join(","))?;
        }
        for p in premises {
            self.write_node(f, p, depth + 1, seen)?;
        }
        Ok(())
    }
}

impl fmt::Display for Proof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_node(f, self.root, 0, &mut HashSet::new())
    }
}

/// Re-runs every step of a proof and checks that it reproduces the
/// recorded clause.
pub fn replay_proof(proof: &Proof, ord: &OrderingConfig, regime: &RegimeConfig) -> Result<(), String> {
    let get = |id: usize| -> Result<&Clause, String> {
        proof.lines.get(&id).map(|l| &l.clause).ok_or_else(|| format!("premise [{id}] missing"))
    };
    for line in proof.lines.values() {
        let ok = match &line.step {
            Step::Input(_) => true,
            Step::Inference(rule, p) => {
                let conclusions: Vec<Clause> = match rule {
                    RuleTag::EqualityResolution => {
                        equality_resolution(get(p[0])?, ord).into_iter().map(|i| i.conclusion).collect()
                    }
                    RuleTag::EqualityFactoring => {
                        equality_factoring(get(p[0])?, ord).into_iter().map(|i| i.conclusion).collect()
                    }
                    RuleTag::Superposition => {
                        let right = get(p[1])?;
                        let left = if p[0] == p[1] {
                            let mut next = right.vars().iter().map(|v| v.0 + 1).max().unwrap_or(0);
                            right.rename_apart(&mut next)
                        } else {
                            get(p[0])?.clone()
                        };
                        let relaxed = parallel_superposition_with(&left, right, ord, SupGuard::Relaxed);
                        relaxed.into_iter().map(|i| i.conclusion).collect()
                    }
                    other => return Err(format!("[{}] uses ground rule {other}", line.id)),
                };
                conclusions.iter().any(|c| c.is_variant(&line.clause))
            }
            Step::Simplification(rule, p) => {
                let c = get(p[0])?;
                let out = match rule {
                    SimpRule::DuplicateLiteral | SimpRule::TrivialLiteral => clean_literals(c),
                    SimpRule::Demodulation => demodulate(c, get(p[1])?, regime.demod, ord),
                    SimpRule::CondRewrite => parallel_cond_rewrite(c, ord),
                    SimpRule::Der => der(c, regime.der),
                    SimpRule::Tautology | SimpRule::Subsumption => Outcome::Unchanged,
                };
                out.replacement().is_some_and(|d| d.is_variant(&line.clause))
            }
        };
        if !ok {
            return Err(format!("step [{}] does not reproduce {}", line.id, line.clause));
        }
    }
    if !proof.lines[&proof.root].clause.is_empty() {
        return Err("the proof does not end in the empty clause".into());
    }
    Ok(())
}
