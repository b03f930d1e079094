use std::collections::BTreeMap;

use thiserror::Error;

use super::{Substitution, Term, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UnifyError {
    #[error("symbol clash between {0} and {1}")]
    Clash(Term, Term),
    #[error("occurs check: {0} occurs in {1}")]
    OccursCheck(Var, Term),
}

pub fn mgu(s: &Term, t: &Term) -> Result<Substitution, UnifyError> {
    mgu_pairs(&[(s.clone(), t.clone())])
}

/// Most general simultaneous unifier of all pairs. The result is kept in
/// solved form throughout, so it is idempotent.
pub fn mgu_pairs(pairs: &[(Term, Term)]) -> Result<Substitution, UnifyError> {
    let mut sigma = Substitution::new();
    let mut stack: Vec<(Term, Term)> = pairs.iter().rev().cloned().collect();
    while let Some((a, b)) = stack.pop() {
        let a = sigma.apply(&a);
        let b = sigma.apply(&b);
        if a == b {
            continue;
        }
        match (&a, &b) {
            (Term::Var(x), _) => bind(&mut sigma, *x, b)?,
            (_, Term::Var(y)) => bind(&mut sigma, *y, a)?,
            (Term::App(f, fa), Term::App(g, ga)) => {
                if f != g || fa.len() != ga.len() {
                    return Err(UnifyError::Clash(a.clone(), b.clone()));
                }
                for (p, q) in fa.iter().zip(ga).rev() {
                    stack.push((p.clone(), q.clone()));
                }
            }
        }
    }
    Ok(sigma)
}

fn bind(sigma: &mut Substitution, x: Var, t: Term) -> Result<(), UnifyError> {
    if t.occurs(x) {
        return Err(UnifyError::OccursCheck(x, t));
    }
    let single = Substitution::from_pairs([(x, t.clone())]);
    *sigma = sigma.then(&single);
    sigma.insert(x, t);
    Ok(())
}

/// Raw bindings used during matching. Unlike [`Substitution`], an identity
/// binding `x ↦ x` is kept, since it still constrains later occurrences of `x`.
pub type Bindings = BTreeMap<Var, Term>;

/// One-sided matching: a substitution σ with `pattern σ = target`.
pub fn match_term(pattern: &Term, target: &Term) -> Option<Substitution> {
    let mut b = Bindings::new();
    match_term_into(pattern, target, &mut b).then(|| Substitution::from_pairs(b))
}

/// Extends `b` so that `pattern b = target`; on failure `b` may hold
/// partial bindings.
pub fn match_term_into(pattern: &Term, target: &Term, b: &mut Bindings) -> bool {
    match pattern {
        Term::Var(v) => match b.get(v) {
            Some(bound) => bound == target,
            None => {
                b.insert(*v, target.clone());
                true
            }
        },
        Term::App(f, args) => match target {
            Term::App(g, targs) if f == g && args.len() == targs.len() => {
                args.iter().zip(targs).all(|(p, t)| match_term_into(p, t, b))
            }
            _ => false,
        },
    }
}
