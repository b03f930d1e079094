//! Ground rewrite systems, normalization and the R-normalization closure
//! orderings.

mod closure;
mod nm;

pub use closure::{closure_compare, clo_tiebreak, GroundClosure, Variant};
pub use nm::{
    compare_nm_horn, compare_nm_nh, lss_lts, nm_horn, nm_nh, ss_ts_nh, Labeled, NmHorn, NmNonHorn, Pair,
};

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::order::OrderingConfig;
use crate::term::Term;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("rule {0} -> {1} is not ground")]
    NonGround(Term, Term),
    #[error("rule {0} -> {1} is not oriented by the term ordering")]
    NotOriented(Term, Term),
    #[error("rewrite system is not left-reduced")]
    NotLeftReduced,
    #[error("closure instances differ: {0} vs {1}")]
    DifferentInstances(String, String),
    #[error("substitution does not ground the clause {0}")]
    NotGrounding(String),
}

/// A finite set of ground rules.
#[derive(Clone, Default)]
pub struct GroundRewriteSystem {
    rules: Vec<(Term, Term)>,
    index: HashMap<Term, usize>,
    left_reduced: bool,
}

impl GroundRewriteSystem {
    pub fn empty() -> GroundRewriteSystem {
        GroundRewriteSystem { rules: Vec::new(), index: HashMap::new(), left_reduced: true }
    }

    pub fn new(rules: Vec<(Term, Term)>) -> Result<GroundRewriteSystem, RewriteError> {
        for (l, r) in &rules {
            if !l.is_ground() || !r.is_ground() {
                return Err(RewriteError::NonGround(l.clone(), r.clone()));
            }
        }
        let mut index = HashMap::new();
        for (i, (l, _)) in rules.iter().enumerate() {
            index.entry(l.clone()).or_insert(i);
        }
        let left_reduced = compute_left_reduced(&rules, &index);
        Ok(GroundRewriteSystem { rules, index, left_reduced })
    }

    /// As [`GroundRewriteSystem::new`], also requiring `lhs ≻ rhs` for every rule.
    pub fn oriented(rules: Vec<(Term, Term)>, cfg: &OrderingConfig) -> Result<GroundRewriteSystem, RewriteError> {
        for (l, r) in &rules {
            if l.is_ground() && r.is_ground() && !cfg.greater(l, r) {
                return Err(RewriteError::NotOriented(l.clone(), r.clone()));
            }
        }
        GroundRewriteSystem::new(rules)
    }

    /// The system extended by one rule.
    pub fn with_rule(&self, l: Term, r: Term) -> GroundRewriteSystem {
        let mut rules = self.rules.clone();
        rules.push((l, r));
        GroundRewriteSystem::new(rules).expect("rules are ground")
    }

    pub fn rules(&self) -> &[(Term, Term)] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn contains(&self, l: &Term, r: &Term) -> bool {
        self.rules.iter().any(|(a, b)| a == l && b == r)
    }

    pub fn rhs(&self, l: &Term) -> Option<&Term> {
        self.index.get(l).map(|&i| &self.rules[i].1)
    }

    pub fn is_left_reduced(&self) -> bool {
        self.left_reduced
    }

    pub fn is_reducible(&self, t: &Term) -> bool {
        self.index.contains_key(t) || t.args().iter().any(|a| self.is_reducible(a))
    }

    /// Leftmost-innermost normal form. Terminates whenever the rules are
    /// contained in a reduction ordering.
    pub fn normalize(&self, t: &Term) -> Term {
        if self.rules.is_empty() {
            return t.clone();
        }
        let mut t = match t {
            Term::Var(_) => return t.clone(),
            Term::App(f, args) => Term::App(*f, args.iter().map(|a| self.normalize(a)).collect()),
        };
        while let Some(r) = self.rhs(&t) {
            t = self.normalize(r);
        }
        t
    }

    /// Whether `s ≈ t` holds in the model of the system.
    pub fn equal(&self, s: &Term, t: &Term) -> bool {
        s == t || self.normalize(s) == self.normalize(t)
    }

    /// The labeled redex multiset of `(t, m)`: every rule lhs used while
    /// normalizing `t`, labeled `m`, except that under label 0 redexes below
    /// the top are labeled 1.
    pub fn rm_horn(&self, t: &Term, m: u8) -> Result<Vec<Labeled>, RewriteError> {
        if !self.left_reduced {
            return Err(RewriteError::NotLeftReduced);
        }
        let mut out = Vec::new();
        self.rm_horn_into(t, m, &mut out);
        Ok(out)
    }

    /// Appends the redexes of `(t, m)` to `out` and returns the normal form.
    pub(crate) fn rm_horn_into(&self, t: &Term, m: u8, out: &mut Vec<Labeled>) -> Term {
        let inner = if m == 0 { 1 } else { m };
        let mut cur = match t {
            Term::Var(_) => return t.clone(),
            Term::App(f, args) => {
                Term::App(*f, args.iter().map(|a| self.rm_horn_into(a, inner, out)).collect())
            }
        };
        while let Some(r) = self.rhs(&cur) {
            out.push((cur.clone(), m));
            cur = self.rm_horn_into(&r.clone(), m, out);
        }
        cur
    }

    /// The unlabeled redex multiset used by the non-Horn ordering.
    pub fn rm_nh(&self, t: &Term) -> Result<Vec<Term>, RewriteError> {
        Ok(self.rm_horn(t, 2)?.into_iter().map(|(u, _)| u).collect())
    }
}

fn compute_left_reduced(rules: &[(Term, Term)], index: &HashMap<Term, usize>) -> bool {
    if index.len() != rules.len() {
        return false;
    }
    rules.iter().all(|(l, _)| {
        l.args()
            .iter()
            .all(|a| a.subterms().into_iter().all(|s| !index.contains_key(s)))
    })
}

impl fmt::Display for GroundRewriteSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (l, r)) in self.rules.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{l} -> {r}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for GroundRewriteSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::parse_term;

    fn t(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    fn sys(rules: &[(&str, &str)]) -> GroundRewriteSystem {
        GroundRewriteSystem::new(rules.iter().map(|(l, r)| (t(l), t(r))).collect()).unwrap()
    }

    #[test]
    fn left_reducedness() {
        assert!(sys(&[("f(b)", "b"), ("g(g(b))", "b")]).is_left_reduced());
        assert!(GroundRewriteSystem::empty().is_left_reduced());
        assert!(!sys(&[("f(b)", "b"), ("f(f(b))", "b")]).is_left_reduced());
        assert!(!sys(&[("f(b)", "b"), ("f(b)", "c")]).is_left_reduced());
    }

    #[test]
    fn normalization() {
        let r = sys(&[("f(b)", "b"), ("g(g(b))", "b")]);
        assert_eq!(r.normalize(&t("h(g(g(b)))")), t("h(b)"));
        assert_eq!(r.normalize(&t("h(c)")), t("h(c)"));
        assert_eq!(sys(&[("f(b)", "b")]).normalize(&t("f(f(b))")), t("b"));
    }

    #[test]
    fn redex_multisets() {
        let r = sys(&[("f(b)", "b"), ("g(g(b))", "b")]);
        assert_eq!(r.rm_horn(&t("g(g(b))"), 1).unwrap(), vec![(t("g(g(b))"), 1)]);
        assert!(r.rm_horn(&t("c"), 0).unwrap().is_empty());
        let mut got = sys(&[("f(b)", "b")]).rm_horn(&t("f(f(b))"), 0).unwrap();
        got.sort();
        assert_eq!(got, vec![(t("f(b)"), 0), (t("f(b)"), 1)]);
        assert_eq!(
            sys(&[("f(b)", "b"), ("f(f(b))", "b")]).rm_horn(&t("b"), 0),
            Err(RewriteError::NotLeftReduced)
        );
    }

    #[test]
    fn orientation_is_checked() {
        let cfg = OrderingConfig::kbo_uniform();
        assert!(GroundRewriteSystem::oriented(vec![(t("f(b)"), t("b"))], &cfg).is_ok());
        assert!(matches!(
            GroundRewriteSystem::oriented(vec![(t("b"), t("f(b)"))], &cfg),
            Err(RewriteError::NotOriented(..))
        ));
    }
}
