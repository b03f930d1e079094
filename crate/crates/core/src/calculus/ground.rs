use std::collections::HashMap;

use super::{needs_guard, nonvar_subterms, orientations, RuleTag};
use crate::clause::{Clause, ClausePos, Literal, Side};
use crate::order::{Comparison, OrderingConfig};
use crate::rewrite::GroundClosure;
use crate::term::{mgu, Position, Substitution, Term, Var};

/// An inference of the ground-closure calculus. For superposition the
/// premises are `[left, right]` and `rule` records the rewrite step
/// `tθ → t'θ` of the left premise.
#[derive(Clone, Debug)]
pub struct ClosureInference {
    pub rule: RuleTag,
    pub premises: Vec<GroundClosure>,
    pub conclusion: GroundClosure,
    pub positions: Vec<ClausePos>,
    pub step: Option<(Term, Term)>,
}

impl ClosureInference {
    /// The right or only premise.
    pub fn main_premise(&self) -> &GroundClosure {
        self.premises.last().expect("inference without premises")
    }
}

/// Renames `d` apart from `c` and merges both substitutions.
fn shared_theta(d: &GroundClosure, c: &GroundClosure) -> (Clause, Substitution) {
    let mut next = c.clause.vars().iter().map(|v| v.0 + 1).max().unwrap_or(0);
    let mut map: HashMap<Var, Var> = HashMap::new();
    let renamed = d.clause.rename_with(&mut map, &mut next);
    let mut theta = c.theta.clone();
    for (old, new) in map {
        theta.insert(new, d.theta.apply(&Term::Var(old)));
    }
    (renamed, theta)
}

fn greater(cfg: &OrderingConfig, s: &Term, t: &Term) -> bool {
    cfg.compare(s, t) == Comparison::Greater
}

/// Checks the conditions shared by both superposition rules on the left
/// premise: `(t ≈ t')θ` strictly maximal and `tθ ≻ t'θ`.
fn left_ok(cfg: &OrderingConfig, dinst: &Clause, j: usize, t: &Term, t2: &Term, theta: &Substitution) -> bool {
    greater(cfg, &theta.apply(t), &theta.apply(t2)) && cfg.is_maximal(dinst, j, true)
}

/// Whether some occurrence lies in a literal that is strictly maximal
/// (positive) or maximal (negative) in `Cθ` with its own side dominating.
fn right_ok(cfg: &OrderingConfig, c: &Clause, cinst: &Clause, occ: &[ClausePos], theta: &Substitution) -> bool {
    occ.iter().any(|p| {
        let l = &c.lits[p.literal];
        cfg.is_maximal(cinst, p.literal, l.positive)
            && greater(cfg, &theta.apply(l.side(p.side)), &theta.apply(l.side(p.side.other())))
    })
}

pub fn ground_ps1(dclo: &GroundClosure, cclo: &GroundClosure, cfg: &OrderingConfig) -> Vec<ClosureInference> {
    let (d, theta) = shared_theta(dclo, cclo);
    let c = &cclo.clause;
    let (dinst, cinst) = (d.apply(&theta), c.apply(&theta));
    let dlt = cfg.compare_clauses(&dinst, &cinst) == Comparison::Less;
    let subterms = nonvar_subterms(c);
    let mut out: Vec<ClosureInference> = Vec::new();
    for (j, dl) in d.lits.iter().enumerate().filter(|(_, l)| l.positive) {
        for (_, t, t2) in orientations(dl) {
            if !left_ok(cfg, &dinst, j, t, t2, &theta) {
                continue;
            }
            let tth = theta.apply(t);
            for u in &subterms {
                if theta.apply(u) != tth {
                    continue;
                }
                let sigma = mgu(t, u).expect("θ unifies t and u");
                let occ = c.occurrences(u);
                if needs_guard(c, &occ) && !dlt {
                    continue;
                }
                if !right_ok(cfg, c, &cinst, &occ, &theta) {
                    continue;
                }
                let mut lits = d.without(j).lits;
                lits.extend(c.replace_all(u, t2).lits);
                let concl = Clause::new(lits).apply(&sigma);
                let conclusion = GroundClosure::new(concl, theta.clone()).expect("θ grounds the conclusion");
                if out.iter().any(|x| x.conclusion.same_closure(&conclusion)) {
                    continue;
                }
                out.push(ClosureInference {
                    rule: RuleTag::SuperpositionI,
                    premises: vec![dclo.clone(), cclo.clone()],
                    conclusion,
                    positions: occ,
                    step: Some((tth.clone(), theta.apply(t2))),
                });
            }
        }
    }
    out
}

pub fn ground_ps2(dclo: &GroundClosure, cclo: &GroundClosure, cfg: &OrderingConfig) -> Vec<ClosureInference> {
    let (d, theta) = shared_theta(dclo, cclo);
    let c = &cclo.clause;
    let (dinst, cinst) = (d.apply(&theta), c.apply(&theta));
    let dlt = cfg.compare_clauses(&dinst, &cinst) == Comparison::Less;
    let mut out: Vec<ClosureInference> = Vec::new();
    for (j, dl) in d.lits.iter().enumerate().filter(|(_, l)| l.positive) {
        for (_, t, t2) in orientations(dl) {
            if !left_ok(cfg, &dinst, j, t, t2, &theta) {
                continue;
            }
            let (tth, t2th) = (theta.apply(t), theta.apply(t2));
            for x in c.vars() {
                let xv = Term::Var(x);
                let xth = theta.apply(&xv);
                let hits = xth.positions_of(&tth);
                if hits.is_empty() {
                    continue;
                }
                let occ = c.occurrences(&xv);
                if needs_guard(c, &occ) && !dlt {
                    continue;
                }
                if !right_ok(cfg, c, &cinst, &occ, &theta) {
                    continue;
                }
                for q in hits {
                    let mut theta2 = theta.clone();
                    theta2.insert(x, xth.replace_at(&q, &t2th).expect("position exists"));
                    let mut lits = d.without(j).lits;
                    lits.extend(c.lits.iter().cloned());
                    let conclusion =
                        GroundClosure::new(Clause::new(lits), theta2).expect("θ grounds the conclusion");
                    if out.iter().any(|i| i.conclusion.same_closure(&conclusion)) {
                        continue;
                    }
                    out.push(ClosureInference {
                        rule: RuleTag::SuperpositionII,
                        premises: vec![dclo.clone(), cclo.clone()],
                        conclusion,
                        positions: occ.clone(),
                        step: Some((tth.clone(), t2th.clone())),
                    });
                }
            }
        }
    }
    out
}

pub fn ground_er(cclo: &GroundClosure, cfg: &OrderingConfig) -> Vec<ClosureInference> {
    let c = &cclo.clause;
    let cinst = cclo.instance();
    let mut out: Vec<ClosureInference> = Vec::new();
    for (i, l) in c.lits.iter().enumerate().filter(|(_, l)| !l.positive) {
        if cclo.theta.apply(&l.lhs) != cclo.theta.apply(&l.rhs) || !cfg.is_maximal(&cinst, i, false) {
            continue;
        }
        let sigma = mgu(&l.lhs, &l.rhs).expect("θ unifies both sides");
        let conclusion =
            GroundClosure::new(c.without(i).apply(&sigma), cclo.theta.clone()).expect("θ grounds the conclusion");
        if out.iter().any(|x| x.conclusion.same_closure(&conclusion)) {
            continue;
        }
        out.push(ClosureInference {
            rule: RuleTag::GroundEqualityResolution,
            premises: vec![cclo.clone()],
            conclusion,
            positions: vec![ClausePos { literal: i, side: Side::Lhs, pos: Position::root() }],
            step: None,
        });
    }
    out
}

pub fn ground_ef(cclo: &GroundClosure, cfg: &OrderingConfig) -> Vec<ClosureInference> {
    let c = &cclo.clause;
    let theta = &cclo.theta;
    let cinst = cclo.instance();
    let mut out: Vec<ClosureInference> = Vec::new();
    for (i, sl) in c.lits.iter().enumerate().filter(|(_, l)| l.positive) {
        if !cfg.is_maximal(&cinst, i, false) {
            continue;
        }
        for (j, rl) in c.lits.iter().enumerate().filter(|(_, l)| l.positive) {
            if i == j {
                continue;
            }
            for (sside, s, s2) in orientations(sl) {
                if !greater(cfg, &theta.apply(s), &theta.apply(s2)) {
                    continue;
                }
                for (_, r, r2) in orientations(rl) {
                    if theta.apply(s) != theta.apply(r) {
                        continue;
                    }
                    let sigma = mgu(s, r).expect("θ unifies s and r");
                    let mut lits: Vec<Literal> = c
                        .lits
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| *k != i && *k != j)
                        .map(|(_, l)| l.clone())
                        .collect();
                    lits.push(Literal::neq(s2.clone(), r2.clone()));
                    lits.push(Literal::eq(r.clone(), r2.clone()));
                    let conclusion = GroundClosure::new(Clause::new(lits).apply(&sigma), theta.clone())
                        .expect("θ grounds the conclusion");
                    if out.iter().any(|x| x.conclusion.same_closure(&conclusion)) {
                        continue;
                    }
                    out.push(ClosureInference {
                        rule: RuleTag::GroundEqualityFactoring,
                        premises: vec![cclo.clone()],
                        conclusion,
                        positions: vec![ClausePos { literal: i, side: sside, pos: Position::root() }],
                        step: None,
                    });
                }
            }
        }
    }
    out
}

/// Every ground inference among `closures`, with factoring only when
/// `factoring` is set.
pub fn ground_inferences(closures: &[GroundClosure], cfg: &OrderingConfig, factoring: bool) -> Vec<ClosureInference> {
    let mut out = Vec::new();
    for c in closures {
        out.extend(ground_er(c, cfg));
        if factoring {
            out.extend(ground_ef(c, cfg));
        }
        for d in closures {
            out.extend(ground_ps1(d, c, cfg));
            out.extend(ground_ps2(d, c, cfg));
        }
    }
    out
}

/// Result of saturating a finite set of ground closures.
#[derive(Clone, Debug)]
pub struct GroundSaturation {
    pub closures: Vec<GroundClosure>,
    pub contains_empty: bool,
    /// False when the closure cap was hit before saturation.
    pub complete: bool,
}

/// Saturates `input` under the ground-closure calculus. An inference counts
/// as redundant when its conclusion is already present, is subsumed by a
/// present closure, or has a tautological instance; every other conclusion
/// is added.
pub fn saturate_ground(input: &[GroundClosure], cfg: &OrderingConfig, factoring: bool, cap: usize) -> GroundSaturation {
    let mut n: Vec<GroundClosure> = Vec::new();
    for c in input {
        if !n.iter().any(|d| d.same_closure(c)) {
            n.push(c.clone());
        }
    }
    loop {
        if n.iter().any(|c| c.is_empty()) {
            return GroundSaturation { closures: n, contains_empty: true, complete: true };
        }
        let mut added = false;
        for inf in ground_inferences(&n, cfg, factoring) {
            let concl = inf.conclusion;
            if crate::simplify::is_tautology(&concl.instance()) || n.iter().any(|d| d.same_closure(&concl) || d.subsumes(&concl)) {
                continue;
            }
            n.push(concl);
            added = true;
            if n.len() >= cap {
                return GroundSaturation { contains_empty: n.iter().any(|c| c.is_empty()), closures: n, complete: false };
            }
        }
        if !added {
            return GroundSaturation { closures: n, contains_empty: false, complete: true };
        }
    }
}
