//! Deletion and simplification rules, and the regimes that license them.

use std::fmt;

use thiserror::Error;

use crate::cc::CongruenceClosure;
use crate::clause::{match_literals, match_literals_with, Clause, Literal, MatchMode};
use crate::order::OrderingConfig;
use crate::term::{match_term, Substitution, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Regime {
    Classical,
    HornClosure,
    NonHornClosure,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DerMode {
    Off,
    Full,
    /// Only variables that do not occur in positive literals.
    NegativeOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DemodMode {
    Off,
    /// Only when the rewritten term is a proper subterm of the redex.
    ProperSubtermOnly,
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SubsumptionMode {
    Off,
    Propositional,
    FirstOrder,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RegimeError {
    #[error("{option} is not licensed under the {regime} regime (use the classical regime or force the experiment)")]
    Blocked { regime: String, option: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RegimeConfig {
    pub regime: Regime,
    pub der: DerMode,
    pub demod: DemodMode,
    pub subsumption: SubsumptionMode,
    pub tautology: bool,
    pub parallel_cond_rewrite: bool,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Classical => "classical",
            Regime::HornClosure => "horn-closure",
            Regime::NonHornClosure => "nonhorn-closure",
        })
    }
}

impl RegimeConfig {
    /// The strongest licensed settings of a regime.
    pub fn defaults(regime: Regime) -> RegimeConfig {
        let (der, demod, subsumption) = match regime {
            Regime::HornClosure => (DerMode::Full, DemodMode::ProperSubtermOnly, SubsumptionMode::Propositional),
            Regime::NonHornClosure => (DerMode::NegativeOnly, DemodMode::ProperSubtermOnly, SubsumptionMode::Propositional),
            Regime::Classical => (DerMode::Off, DemodMode::Full, SubsumptionMode::FirstOrder),
        };
        RegimeConfig { regime, der, demod, subsumption, tautology: true, parallel_cond_rewrite: true }
    }

    fn blocked(&self) -> Vec<String> {
        let mut out = Vec::new();
        let closure = matches!(self.regime, Regime::HornClosure | Regime::NonHornClosure);
        if closure && self.demod == DemodMode::Full {
            out.push("demod=full".to_string());
        }
        if closure && self.subsumption == SubsumptionMode::FirstOrder {
            out.push("subsume=first-order".to_string());
        }
        if self.regime == Regime::NonHornClosure && self.der == DerMode::Full {
            out.push("der=full".to_string());
        }
        out
    }

    /// Checks the licensing matrix. Blocked options are errors unless
    /// `force` is set; warnings are returned for forced options and for
    /// classical combinations that are known to lose completeness.
    pub fn validate(&self, force: bool) -> Result<Vec<String>, RegimeError> {
        let mut warnings = Vec::new();
        for option in self.blocked() {
            if !force {
                return Err(RegimeError::Blocked { regime: self.regime.to_string(), option });
            }
            warnings.push(format!("{option} forced under the {} regime; completeness is not guaranteed", self.regime));
        }
        if self.regime == Regime::Classical && self.der == DerMode::Full {
            warnings.push(
                "DER together with the classical redundancy criterion can lose refutational completeness".to_string(),
            );
        }
        Ok(warnings)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SimpRule {
    Tautology,
    Subsumption,
    Demodulation,
    CondRewrite,
    Der,
    DuplicateLiteral,
    TrivialLiteral,
}

impl SimpRule {
    pub fn name(self) -> &'static str {
        match self {
            SimpRule::Tautology => "taut",
            SimpRule::Subsumption => "subsume",
            SimpRule::Demodulation => "demod",
            SimpRule::CondRewrite => "condrw",
            SimpRule::Der => "der",
            SimpRule::DuplicateLiteral => "dedup",
            SimpRule::TrivialLiteral => "trivlit",
        }
    }
}

impl fmt::Display for SimpRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Unchanged,
    Deleted(SimpRule),
    Replaced(Clause, SimpRule),
}

impl Outcome {
    pub fn replacement(&self) -> Option<&Clause> {
        match self {
            Outcome::Replaced(c, _) => Some(c),
            _ => None,
        }
    }
}

fn eligible_binding(c: &Clause, i: usize, mode: DerMode) -> Option<(crate::term::Var, Term)> {
    let l = &c.lits[i];
    if l.positive {
        return None;
    }
    for (x, t) in [(&l.lhs, &l.rhs), (&l.rhs, &l.lhs)] {
        let Some(v) = x.as_var() else { continue };
        if t.occurs(v) {
            continue;
        }
        if mode == DerMode::NegativeOnly
            && c.lits.iter().any(|m| m.positive && (m.lhs.occurs(v) || m.rhs.occurs(v)))
        {
            continue;
        }
        return Some((v, t.clone()));
    }
    None
}

/// Destructive equality resolution, eliminating eligible literals left to
/// right until none remains.
pub fn der(c: &Clause, mode: DerMode) -> Outcome {
    if mode == DerMode::Off {
        return Outcome::Unchanged;
    }
    let mut cur = c.clone();
    let mut changed = false;
    'again: loop {
        for i in 0..cur.len() {
            if let Some((v, t)) = eligible_binding(&cur, i, mode) {
                let s = Substitution::from_pairs([(v, t)]);
                cur = cur.without(i).apply(&s);
                changed = true;
                continue 'again;
            }
        }
        break;
    }
    if changed {
        Outcome::Replaced(cur, SimpRule::Der)
    } else {
        Outcome::Unchanged
    }
}

/// One parallel demodulation step of `c` by the positive unit `unit`.
pub fn demodulate(c: &Clause, unit: &Clause, mode: DemodMode, cfg: &OrderingConfig) -> Outcome {
    if mode == DemodMode::Off || unit.len() != 1 || !unit.lits[0].positive {
        return Outcome::Unchanged;
    }
    let eq = &unit.lits[0];
    let mut subterms: Vec<&Term> = Vec::new();
    for l in &c.lits {
        for side in [&l.lhs, &l.rhs] {
            for s in side.subterms() {
                if !s.is_var() && !subterms.contains(&s) {
                    subterms.push(s);
                }
            }
        }
    }
    for s in subterms {
        for (l, r) in [(&eq.lhs, &eq.rhs), (&eq.rhs, &eq.lhs)] {
            if l.is_var() {
                continue;
            }
            let Some(sigma) = match_term(l, s) else { continue };
            let rs = sigma.apply(r);
            if !cfg.greater(s, &rs) {
                continue;
            }
            if mode == DemodMode::ProperSubtermOnly && !rs.is_proper_subterm_of(s) {
                continue;
            }
            return Outcome::Replaced(c.replace_all(s, &rs), SimpRule::Demodulation);
        }
    }
    Outcome::Unchanged
}

/// Parallel rewriting with a condition literal `t ≉ t'`, `t ≻ t'`: every
/// occurrence of `t` in the other literals becomes `t'`.
pub fn parallel_cond_rewrite(c: &Clause, cfg: &OrderingConfig) -> Outcome {
    for (i, l) in c.lits.iter().enumerate().filter(|(_, l)| !l.positive) {
        for (t, t2) in [(&l.lhs, &l.rhs), (&l.rhs, &l.lhs)] {
            if !cfg.greater(t, t2) {
                continue;
            }
            let hit = c.lits.iter().enumerate().any(|(j, m)| j != i && (m.lhs.contains(t) || m.rhs.contains(t)));
            if !hit {
                continue;
            }
            let lits = c
                .lits
                .iter()
                .enumerate()
                .map(|(j, m)| {
                    if j == i {
                        m.clone()
                    } else {
                        Literal { lhs: m.lhs.replace_all(t, t2), rhs: m.rhs.replace_all(t, t2), positive: m.positive }
                    }
                })
                .collect();
            return Outcome::Replaced(Clause::new(lits), SimpRule::CondRewrite);
        }
    }
    Outcome::Unchanged
}

/// Whether `c` subsumes `d`. Propositional subsumption allows only an
/// injective renaming of `c` and needs `c` strictly shorter; first-order
/// subsumption allows any instance of `c` that is not a variant of `d`.
pub fn subsumes(c: &Clause, d: &Clause, mode: SubsumptionMode) -> bool {
    if c.len() > d.len() {
        return false;
    }
    match mode {
        SubsumptionMode::Off => false,
        SubsumptionMode::Propositional => c.len() < d.len() && match_literals(&c.lits, &d.lits, MatchMode::Renaming),
        SubsumptionMode::FirstOrder => {
            !c.is_variant(d) && match_literals_with(&c.lits, &d.lits, MatchMode::Instance, &|_| true)
        }
    }
}

pub fn is_tautology(c: &Clause) -> bool {
    if c.lits.iter().any(|l| l.positive && l.lhs == l.rhs) {
        return true;
    }
    let complementary = c
        .lits
        .iter()
        .any(|l| l.positive && c.lits.iter().any(|m| !m.positive && m.same_as(&l.negated())));
    if complementary {
        return true;
    }
    if !c.is_ground() || c.lits.iter().all(|l| !l.positive) {
        return false;
    }
    let mut cc = CongruenceClosure::from_equations(c.lits.iter().filter(|l| !l.positive).map(|l| (&l.lhs, &l.rhs)));
    c.lits.iter().filter(|l| l.positive).any(|l| cc.equal(&l.lhs, &l.rhs))
}

/// Removes repeated literals and literals `s ≉ s`.
pub fn clean_literals(c: &Clause) -> Outcome {
    let mut lits: Vec<Literal> = Vec::new();
    let mut rule = None;
    for l in &c.lits {
        if l.is_trivially_false() {
            rule = Some(SimpRule::TrivialLiteral);
        } else if lits.iter().any(|m| m.same_as(l)) {
            rule.get_or_insert(SimpRule::DuplicateLiteral);
        } else {
            lits.push(l.clone());
        }
    }
    match rule {
        Some(r) => Outcome::Replaced(Clause::new(lits), r),
        None => Outcome::Unchanged,
    }
}

#[cfg(test)]
mod tests;
