//! Inference rules: the lifted calculus on clauses and the ground-closure
//! calculus used to check the completeness argument at small scale.

mod ground;

use std::collections::BTreeSet;
use std::fmt;

use crate::clause::{Clause, ClausePos, Literal, Side};
use crate::order::{Comparison, OrderingConfig};
use crate::term::{mgu, Substitution, Term};

pub use ground::{
    ground_ef, ground_er, ground_inferences, ground_ps1, ground_ps2, saturate_ground, ClosureInference, GroundSaturation,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleTag {
    Superposition,
    EqualityResolution,
    EqualityFactoring,
    SuperpositionI,
    SuperpositionII,
    GroundEqualityResolution,
    GroundEqualityFactoring,
}

impl RuleTag {
    pub fn name(self) -> &'static str {
        match self {
            RuleTag::Superposition => "sup",
            RuleTag::EqualityResolution => "eqres",
            RuleTag::EqualityFactoring => "eqfact",
            RuleTag::SuperpositionI => "sup1",
            RuleTag::SuperpositionII => "sup2",
            RuleTag::GroundEqualityResolution => "eqres",
            RuleTag::GroundEqualityFactoring => "eqfact",
        }
    }

    pub fn is_superposition(self) -> bool {
        matches!(self, RuleTag::Superposition | RuleTag::SuperpositionI | RuleTag::SuperpositionII)
    }
}

impl fmt::Display for RuleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// When the clause-ordering guard of Parallel Superposition is checked.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SupGuard {
    /// Only when some occurrence is negative or below the top of a positive literal.
    #[default]
    Relaxed,
    Always,
}

/// A non-ground inference. Superposition premises are `[left, right]`.
#[derive(Clone, Debug)]
pub struct Inference {
    pub rule: RuleTag,
    pub premises: Vec<Clause>,
    pub conclusion: Clause,
    pub unifier: Substitution,
    pub positions: Vec<ClausePos>,
}

fn not_le(c: Comparison) -> bool {
    c.not_less_or_equal()
}

/// Distinct non-variable subterms of a clause.
pub(crate) fn nonvar_subterms(c: &Clause) -> BTreeSet<Term> {
    let mut out = BTreeSet::new();
    for l in &c.lits {
        for side in [&l.lhs, &l.rhs] {
            out.extend(side.subterms().into_iter().filter(|t| !t.is_var()).cloned());
        }
    }
    out
}

pub(crate) fn orientations(l: &Literal) -> [(Side, &Term, &Term); 2] {
    [(Side::Lhs, &l.lhs, &l.rhs), (Side::Rhs, &l.rhs, &l.lhs)]
}

/// Whether some occurrence sits in a negative literal or strictly below the
/// top of a positive one.
pub(crate) fn needs_guard(c: &Clause, occ: &[ClausePos]) -> bool {
    occ.iter().any(|p| !c.lits[p.literal].positive || !p.pos.is_root())
}

pub fn parallel_superposition(d: &Clause, c: &Clause, cfg: &OrderingConfig) -> Vec<Inference> {
    parallel_superposition_with(d, c, cfg, SupGuard::Relaxed)
}

/// All Parallel Superposition inferences with left premise `d` and right
/// premise `c`. The premises must not share variables.
pub fn parallel_superposition_with(d: &Clause, c: &Clause, cfg: &OrderingConfig, guard: SupGuard) -> Vec<Inference> {
    let mut out: Vec<Inference> = Vec::new();
    let subterms = nonvar_subterms(c);
    for (j, dl) in d.lits.iter().enumerate().filter(|(_, l)| l.positive) {
        for (_, t, t2) in orientations(dl) {
            for u in &subterms {
                let Ok(sigma) = mgu(t, u) else { continue };
                let (ts, t2s) = (sigma.apply(t), sigma.apply(t2));
                if !not_le(cfg.compare(&ts, &t2s)) {
                    continue;
                }
                let ds = d.apply(&sigma);
                if !cfg.is_maximal(&ds, j, true) {
                    continue;
                }
                let occ = c.occurrences(u);
                let cs = c.apply(&sigma);
                if (guard == SupGuard::Always || needs_guard(c, &occ)) && !not_le(cfg.compare_clauses(&cs, &ds)) {
                    continue;
                }
                let eligible = occ.iter().any(|p| {
                    let l = &c.lits[p.literal];
                    let ok_lit = cfg.is_maximal(&cs, p.literal, l.positive);
                    ok_lit && not_le(cfg.compare(&sigma.apply(l.side(p.side)), &sigma.apply(l.side(p.side.other()))))
                });
                if !eligible {
                    continue;
                }
                let mut lits = d.without(j).lits;
                lits.extend(c.replace_all(u, t2).lits);
                let conclusion = Clause::new(lits).apply(&sigma);
                if out.iter().any(|i| i.conclusion.is_variant(&conclusion)) {
                    continue;
                }
                out.push(Inference {
                    rule: RuleTag::Superposition,
                    premises: vec![d.clone(), c.clone()],
                    conclusion,
                    unifier: sigma,
                    positions: occ,
                });
            }
        }
    }
    out
}

pub fn equality_resolution(c: &Clause, cfg: &OrderingConfig) -> Vec<Inference> {
    let mut out: Vec<Inference> = Vec::new();
    for (i, l) in c.lits.iter().enumerate().filter(|(_, l)| !l.positive) {
        let Ok(sigma) = mgu(&l.lhs, &l.rhs) else { continue };
        if !cfg.is_maximal(&c.apply(&sigma), i, false) {
            continue;
        }
        let conclusion = c.without(i).apply(&sigma);
        if out.iter().any(|x| x.conclusion.is_variant(&conclusion)) {
            continue;
        }
        out.push(Inference {
            rule: RuleTag::EqualityResolution,
            premises: vec![c.clone()],
            conclusion,
            unifier: sigma,
            positions: vec![ClausePos { literal: i, side: Side::Lhs, pos: crate::term::Position::root() }],
        });
    }
    out
}

pub fn equality_factoring(c: &Clause, cfg: &OrderingConfig) -> Vec<Inference> {
    let mut out: Vec<Inference> = Vec::new();
    for (i, sl) in c.lits.iter().enumerate().filter(|(_, l)| l.positive) {
        for (j, rl) in c.lits.iter().enumerate().filter(|(_, l)| l.positive) {
            if i == j {
                continue;
            }
            for (sside, s, s2) in orientations(sl) {
                for (_, r, r2) in orientations(rl) {
                    let Ok(sigma) = mgu(s, r) else { continue };
                    if !not_le(cfg.compare(&sigma.apply(s), &sigma.apply(s2))) {
                        continue;
                    }
                    if !cfg.is_maximal(&c.apply(&sigma), i, false) {
                        continue;
                    }
                    let mut lits: Vec<Literal> = c
                        .lits
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| *k != i && *k != j)
                        .map(|(_, l)| l.clone())
                        .collect();
                    lits.push(Literal::neq(s2.clone(), r2.clone()));
                    lits.push(Literal::eq(r.clone(), r2.clone()));
                    let conclusion = Clause::new(lits).apply(&sigma);
                    if out.iter().any(|x| x.conclusion.is_variant(&conclusion)) {
                        continue;
                    }
                    out.push(Inference {
                        rule: RuleTag::EqualityFactoring,
                        premises: vec![c.clone()],
                        conclusion,
                        unifier: sigma,
                        positions: vec![ClausePos { literal: i, side: sside, pos: crate::term::Position::root() }],
                    });
                }
            }
        }
    }
    out
}
