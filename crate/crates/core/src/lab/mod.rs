//! Bounded, executable versions of the closure redundancy definitions.
//!
//! The definitions quantify over every left-reduced ground rewrite system
//! contained in the term ordering. Here that quantifier ranges over the
//! systems whose rules use terms of a finite, subterm-closed universe, so
//! every verdict is relative to that universe.

mod entail;
pub mod props;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::calculus::ClosureInference;
use crate::clause::Clause;
use crate::gen::Signature;
use crate::order::{Comparison, OrderingConfig};
use crate::rewrite::{closure_compare, GroundClosure, GroundRewriteSystem, RewriteError, Variant};
use crate::term::{Substitution, Term, Var};

pub use entail::{ground_entails, ground_satisfiable};

#[derive(Debug, Error)]
pub enum LabError {
    #[error("more than {cap} left-reduced rewrite systems over a universe of {terms} terms")]
    TooManySystems { cap: usize, terms: usize },
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

#[derive(Clone, Debug)]
pub struct UniverseBound {
    pub max_depth: usize,
    pub max_terms: usize,
    pub signature: Signature,
}

/// A finite set of ground terms closed under subterms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Universe {
    terms: Vec<Term>,
}

fn size_order(a: &Term, b: &Term) -> std::cmp::Ordering {
    (a.size(), a.to_string()).cmp(&(b.size(), b.to_string()))
}

impl Universe {
    /// The smallest ground terms over the signature up to the depth bound.
    pub fn generate(bound: &UniverseBound) -> Universe {
        let mut layer: BTreeSet<Term> = BTreeSet::new();
        for _ in 0..=bound.max_depth {
            let prev: Vec<Term> = layer.iter().cloned().collect();
            for &(f, arity) in &bound.signature.symbols {
                let mut tuples: Vec<Vec<Term>> = vec![vec![]];
                for _ in 0..arity {
                    tuples = tuples
                        .into_iter()
                        .flat_map(|t| {
                            prev.iter().map(move |p| {
                                let mut t = t.clone();
                                t.push(p.clone());
                                t
                            })
                        })
                        .collect();
                }
                layer.extend(tuples.into_iter().map(|args| Term::App(f, args)));
            }
        }
        let mut terms: Vec<Term> = layer.into_iter().collect();
        terms.sort_by(size_order);
        terms.truncate(bound.max_terms);
        Universe { terms }
    }

    /// The subterm closure of the given ground terms.
    pub fn from_terms<'a>(terms: impl IntoIterator<Item = &'a Term>) -> Universe {
        let mut set = BTreeSet::new();
        for t in terms {
            assert!(t.is_ground(), "universe term {t} is not ground");
            set.extend(t.subterms().into_iter().cloned());
        }
        let mut terms: Vec<Term> = set.into_iter().collect();
        terms.sort_by(size_order);
        Universe { terms }
    }

    /// All terms of ground clauses.
    pub fn of_clauses<'a>(clauses: impl IntoIterator<Item = &'a Clause>) -> Universe {
        let mut all = Vec::new();
        for c in clauses {
            for l in &c.lits {
                all.push(l.lhs.clone());
                all.push(l.rhs.clone());
            }
        }
        Universe::from_terms(all.iter())
    }

    /// Adds one layer of applications of the given unary symbols.
    pub fn padded(&self, unary: &[&str]) -> Universe {
        let mut extra: Vec<Term> = self.terms.clone();
        for t in &self.terms {
            for f in unary {
                extra.push(Term::app(f, vec![t.clone()]));
            }
        }
        Universe::from_terms(extra.iter())
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.terms.iter().map(|t| t.to_string()).collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}

/// Every closure `(c · θ)` with θ mapping the variables of `c` into the universe.
pub fn ground_instances(c: &Clause, universe: &Universe) -> Vec<GroundClosure> {
    let vars: Vec<Var> = c.vars().into_iter().collect();
    let mut thetas = vec![Substitution::new()];
    for v in vars {
        thetas = thetas
            .into_iter()
            .flat_map(|th| {
                universe.terms().iter().map(move |t| {
                    let mut th = th.clone();
                    th.insert(v, t.clone());
                    th
                })
            })
            .collect();
    }
    thetas.into_iter().map(|th| GroundClosure::new(c.clone(), th).expect("grounding")).collect()
}

/// Lazily enumerates every left-reduced rewrite system contained in the
/// ordering whose rules use universe terms, by ascending rule count and then
/// rule encoding.
pub struct SystemEnumerator {
    terms: Vec<Term>,
    options: Vec<Vec<Term>>,
    level: usize,
    buffer: std::vec::IntoIter<Vec<(Term, Term)>>,
}

impl SystemEnumerator {
    pub fn new(universe: &Universe, cfg: &OrderingConfig) -> SystemEnumerator {
        let terms = universe.terms().to_vec();
        let options = terms.iter().map(|l| terms.iter().filter(|r| cfg.greater(l, r)).cloned().collect()).collect();
        SystemEnumerator { terms, options, level: 0, buffer: Vec::new().into_iter() }
    }

    fn generate(&self, k: usize) -> Vec<Vec<(Term, Term)>> {
        fn go(
            e: &SystemEnumerator,
            i: usize,
            k: usize,
            chosen: &mut Vec<(Term, Term)>,
            out: &mut Vec<Vec<(Term, Term)>>,
        ) {
            if chosen.len() == k {
                out.push(chosen.clone());
                return;
            }
            if i == e.terms.len() {
                return;
            }
            let l = &e.terms[i];
            if !e.options[i].is_empty() && !chosen.iter().any(|(m, _)| m.contains(l) || l.contains(m)) {
                for r in &e.options[i] {
                    chosen.push((l.clone(), r.clone()));
                    go(e, i + 1, k, chosen, out);
                    chosen.pop();
                }
            }
            go(e, i + 1, k, chosen, out);
        }
        let mut out = Vec::new();
        go(self, 0, k, &mut Vec::new(), &mut out);
        let mut keyed: Vec<(String, Vec<(Term, Term)>)> = out
            .into_iter()
            .map(|rules| {
                let key: Vec<String> = rules.iter().map(|(l, r)| format!("{l}->{r}")).collect();
                (key.join(","), rules)
            })
            .collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        keyed.into_iter().map(|(_, r)| r).collect()
    }
}

impl Iterator for SystemEnumerator {
    type Item = GroundRewriteSystem;

    fn next(&mut self) -> Option<GroundRewriteSystem> {
        loop {
            if let Some(rules) = self.buffer.next() {
                return Some(GroundRewriteSystem::new(rules).expect("universe terms are ground"));
            }
            if self.level > self.terms.len() {
                return None;
            }
            let batch = self.generate(self.level);
            if batch.is_empty() && self.level > 0 {
                self.level = self.terms.len() + 1;
                return None;
            }
            self.level += 1;
            self.buffer = batch.into_iter();
        }
    }
}

/// All systems of [`SystemEnumerator`], refusing more than `cap`.
pub fn enumerate_left_reduced(
    universe: &Universe,
    cfg: &OrderingConfig,
    cap: usize,
) -> Result<Vec<GroundRewriteSystem>, LabError> {
    let all: Vec<GroundRewriteSystem> = SystemEnumerator::new(universe, cfg).take(cap + 1).collect();
    if all.len() > cap {
        return Err(LabError::TooManySystems { cap, terms: universe.len() });
    }
    Ok(all)
}

/// Classical redundancy of a ground clause w.r.t. ground clauses: entailed
/// by the `≺_C`-smaller ones.
pub fn classically_redundant(c: &Clause, n: &[Clause], cfg: &OrderingConfig) -> bool {
    let smaller: Vec<Clause> =
        n.iter().filter(|d| cfg.compare_clauses(d, c) == Comparison::Less).cloned().collect();
    ground_entails(&smaller, c)
}

/// Outcome of a bounded redundancy check.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub redundant: bool,
    /// Number of rewrite systems examined.
    pub checked: usize,
    /// The first system that refutes redundancy, if any.
    pub witness: Option<GroundRewriteSystem>,
    pub universe_size: usize,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ({} systems over a universe of {} terms)",
            if self.redundant { "redundant" } else { "not redundant" },
            self.checked,
            self.universe_size
        )?;
        if let Some(w) = &self.witness {
            let rules: Vec<String> = w.rules().iter().map(|(l, r)| format!("{l} -> {r}")).collect();
            write!(f, "; counterexample R = {{{}}}", rules.join(", "))?;
        }
        Ok(())
    }
}

/// The bounded lab: an ordering, a universe, and a cap on the number of
/// rewrite systems examined per question.
pub struct Lab {
    pub cfg: OrderingConfig,
    pub universe: Universe,
    pub cap: usize,
}

impl Lab {
    pub fn new(cfg: OrderingConfig, universe: Universe, cap: usize) -> Lab {
        Lab { cfg, universe, cap }
    }

    pub fn systems(&self) -> SystemEnumerator {
        SystemEnumerator::new(&self.universe, &self.cfg)
    }

    fn verdict(&self, mut holds: impl FnMut(&GroundRewriteSystem) -> Result<bool, RewriteError>) -> Result<Verdict, LabError> {
        let mut checked = 0;
        for r in self.systems() {
            if checked == self.cap {
                return Err(LabError::TooManySystems { cap: self.cap, terms: self.universe.len() });
            }
            checked += 1;
            if !holds(&r)? {
                return Ok(Verdict {
                    redundant: false,
                    checked,
                    witness: Some(r),
                    universe_size: self.universe.len(),
                });
            }
        }
        Ok(Verdict { redundant: true, checked, witness: None, universe_size: self.universe.len() })
    }

    fn smaller_false_exists(
        &self,
        r: &GroundRewriteSystem,
        variant: Variant,
        n: &[GroundClosure],
        than: &GroundClosure,
    ) -> Result<bool, RewriteError> {
        for d in n {
            if !d.is_true_in(r) && closure_compare(&self.cfg, r, variant, d, than)? == Comparison::Less {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Closure redundancy: for every system, the closure is true or some
    /// smaller closure of `n` is false.
    pub fn closure_redundant(&self, clo: &GroundClosure, n: &[GroundClosure], variant: Variant) -> Result<Verdict, LabError> {
        self.verdict(|r| Ok(clo.is_true_in(r) || self.smaller_false_exists(r, variant, n, clo)?))
    }

    /// Inference redundancy, checking the four cases per system.
    pub fn inference_redundant(&self, inf: &ClosureInference, n: &[GroundClosure], variant: Variant) -> Result<Verdict, LabError> {
        let main = inf.main_premise();
        self.verdict(|r| {
            if inf.conclusion.is_true_in(r) {
                return Ok(true);
            }
            if inf.rule.is_superposition() {
                let (t, t2) = inf.step.as_ref().expect("superposition records its rewrite step");
                if !r.contains(t, t2) {
                    return Ok(true);
                }
                if closure_compare(&self.cfg, r, variant, &inf.premises[0], main)? == Comparison::Greater {
                    return Ok(true);
                }
            }
            self.smaller_false_exists(r, variant, n, main)
        })
    }
}

#[cfg(test)]
mod tests;
