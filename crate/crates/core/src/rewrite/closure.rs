use std::fmt;

use super::nm::{compare_nm_horn, compare_nm_nh, nm_horn, nm_nh};
use super::{GroundRewriteSystem, RewriteError};
use crate::clause::{match_literals_with, Clause, MatchMode};
use crate::order::{Comparison, OrderingConfig};
use crate::term::{Substitution, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Horn,
    NonHorn,
}

/// A clause paired with a grounding substitution, restricted to the
/// clause's variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroundClosure {
    pub clause: Clause,
    pub theta: Substitution,
}

impl GroundClosure {
    pub fn new(clause: Clause, theta: Substitution) -> Result<GroundClosure, RewriteError> {
        let vars = clause.vars();
        if !theta.is_ground_on(vars.iter().copied()) {
            return Err(RewriteError::NotGrounding(clause.to_string()));
        }
        let theta = theta.restrict(vars);
        Ok(GroundClosure { clause, theta })
    }

    /// The closure `(C · ∅)` of a ground clause.
    pub fn ground(clause: Clause) -> GroundClosure {
        assert!(clause.is_ground(), "clause {clause} is not ground");
        GroundClosure { clause, theta: Substitution::new() }
    }

    pub fn instance(&self) -> Clause {
        self.clause.apply(&self.theta)
    }

    pub fn is_empty(&self) -> bool {
        self.clause.is_empty()
    }

    /// Closure identity: equal up to bijective renaming of the clause part,
    /// with the substitutions agreeing through that renaming.
    pub fn same_closure(&self, other: &GroundClosure) -> bool {
        if self.clause.len() != other.clause.len() || self.clause.weight() != other.clause.weight() {
            return false;
        }
        match_literals_with(&self.clause.lits, &other.clause.lits, MatchMode::Renaming, &|b| {
            b.iter().all(|(x, y)| self.theta.apply(&Term::Var(*x)) == other.theta.apply(y))
        })
    }

    /// Closure-level propositional subsumption: a renaming maps the clause
    /// part onto a proper sub-multiset of `other`'s, and the substitutions
    /// agree through it. Such an `other` is false whenever `self` is and is
    /// `≻≻_R`-larger for every `R`.
    pub fn subsumes(&self, other: &GroundClosure) -> bool {
        self.clause.len() < other.clause.len()
            && match_literals_with(&self.clause.lits, &other.clause.lits, MatchMode::Renaming, &|b| {
                b.iter().all(|(x, y)| self.theta.apply(&Term::Var(*x)) == other.theta.apply(y))
            })
    }

    pub fn canonical(&self) -> String {
        self.clause.canonical_with(&self.theta)
    }

    pub fn nm_horn(&self, r: &GroundRewriteSystem) -> Result<super::NmHorn, RewriteError> {
        nm_horn(r, &self.clause, &self.theta)
    }

    pub fn nm_nh(&self, r: &GroundRewriteSystem) -> Result<super::NmNonHorn, RewriteError> {
        nm_nh(r, &self.clause, &self.theta)
    }

    /// Truth in the model given by a ground rewrite system.
    pub fn is_true_in(&self, r: &GroundRewriteSystem) -> bool {
        self.instance()
            .lits
            .iter()
            .any(|l| r.equal(&l.lhs, &l.rhs) == l.positive)
    }
}

impl fmt::Display for GroundClosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} · {})", self.clause, self.theta)
    }
}

impl fmt::Debug for GroundClosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Measure of the tie-breaking order on closures with the same instance:
/// fewer function symbols in the clause part ranks higher, then more
/// distinct variables, then the canonical rendering.
fn clo_measure(c: &GroundClosure) -> (std::cmp::Reverse<usize>, usize, String) {
    (std::cmp::Reverse(c.clause.function_count()), c.clause.vars().len(), c.canonical())
}

/// The well-founded tie-break on closures with equal ground instances. A
/// closure whose clause is strictly more general ranks higher.
pub fn clo_tiebreak(a: &GroundClosure, b: &GroundClosure) -> Result<Comparison, RewriteError> {
    let (ia, ib) = (a.instance(), b.instance());
    if !ia.same_multiset(&ib) {
        return Err(RewriteError::DifferentInstances(ia.to_string(), ib.to_string()));
    }
    Ok(clo_measure(a).cmp(&clo_measure(b)).into())
}

/// The R-normalization closure ordering `≻≻_R`.
pub fn closure_compare(
    cfg: &OrderingConfig,
    r: &GroundRewriteSystem,
    variant: Variant,
    a: &GroundClosure,
    b: &GroundClosure,
) -> Result<Comparison, RewriteError> {
    let first = match variant {
        Variant::Horn => compare_nm_horn(cfg, &a.nm_horn(r)?, &b.nm_horn(r)?),
        Variant::NonHorn => compare_nm_nh(cfg, &a.nm_nh(r)?, &b.nm_nh(r)?),
    };
    if first != Comparison::Equal {
        return Ok(first);
    }
    let second = cfg.compare_clauses(&a.instance(), &b.instance());
    if second != Comparison::Equal {
        return Ok(second);
    }
    clo_tiebreak(a, b)
}
