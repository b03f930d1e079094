use std::collections::{BTreeMap, BTreeSet};

use super::{GroundRewriteSystem, RewriteError};
use crate::clause::Clause;
use crate::order::{multiset_compare, Comparison, OrderingConfig};
use crate::term::{Substitution, Term};

/// A ground term with a label: 0 positive at the top, 1 positive below the
/// top, 2 negative.
pub type Labeled = (Term, u8);
pub type NmHorn = Vec<Labeled>;
/// A two-element multiset of ground terms.
pub type Pair = [Term; 2];
pub type NmNonHorn = Vec<Pair>;

/// The labeled subterm set and labeled topterm set of a clause, each term
/// appearing once with its label.
pub fn lss_lts(c: &Clause) -> (BTreeMap<Term, u8>, BTreeMap<Term, u8>) {
    let mut ss_neg = BTreeSet::new();
    let mut ss_pos_below = BTreeSet::new();
    let mut ts_neg = BTreeSet::new();
    let mut ts_pos = BTreeSet::new();
    for l in &c.lits {
        for side in [&l.lhs, &l.rhs] {
            if l.positive {
                ts_pos.insert(side.clone());
                for a in side.args() {
                    ss_pos_below.extend(a.subterms().into_iter().cloned());
                }
            } else {
                ts_neg.insert(side.clone());
                ss_neg.extend(side.subterms().into_iter().cloned());
            }
        }
    }
    let mut lss = BTreeMap::new();
    for t in &ts_pos {
        lss.insert(t.clone(), 0);
    }
    for t in &ss_pos_below {
        lss.insert(t.clone(), 1);
    }
    for t in &ss_neg {
        lss.insert(t.clone(), 2);
    }
    let mut lts = BTreeMap::new();
    for t in &ts_pos {
        lts.insert(t.clone(), 0);
    }
    for t in &ts_neg {
        lts.insert(t.clone(), 2);
    }
    (lss, lts)
}

/// Instance of a subterm set entry with its arguments normalized first;
/// variables are taken whole.
fn prenormalized(r: &GroundRewriteSystem, t: &Term, theta: &Substitution) -> Term {
    match t {
        Term::Var(_) => theta.apply(t),
        Term::App(f, args) => Term::App(*f, args.iter().map(|a| r.normalize(&theta.apply(a))).collect()),
    }
}

/// The Horn R-normalization multiset of `(c · theta)`, sorted.
pub fn nm_horn(r: &GroundRewriteSystem, c: &Clause, theta: &Substitution) -> Result<NmHorn, RewriteError> {
    if !r.is_left_reduced() {
        return Err(RewriteError::NotLeftReduced);
    }
    let (lss, lts) = lss_lts(c);
    let mut out = Vec::new();
    for (t, m) in &lss {
        r.rm_horn_into(&prenormalized(r, t, theta), *m, &mut out);
    }
    for (t, m) in &lts {
        out.push((r.normalize(&theta.apply(t)), *m));
    }
    out.sort();
    Ok(out)
}

/// The negative subterm set and negative topterm set.
pub fn ss_ts_nh(c: &Clause) -> (BTreeSet<Term>, BTreeSet<Term>) {
    let mut ss = BTreeSet::new();
    let mut ts = BTreeSet::new();
    for l in c.lits.iter().filter(|l| !l.positive) {
        for side in [&l.lhs, &l.rhs] {
            ts.insert(side.clone());
            ss.extend(side.subterms().into_iter().cloned());
        }
    }
    (ss, ts)
}

fn pair(a: Term, b: Term) -> Pair {
    if a >= b {
        [a, b]
    } else {
        [b, a]
    }
}

/// The non-Horn R-normalization multiset of `(c · theta)`, sorted.
pub fn nm_nh(r: &GroundRewriteSystem, c: &Clause, theta: &Substitution) -> Result<NmNonHorn, RewriteError> {
    if !r.is_left_reduced() {
        return Err(RewriteError::NotLeftReduced);
    }
    let (ss, ts) = ss_ts_nh(c);
    let mut redexes = Vec::new();
    for t in &ss {
        r.rm_horn_into(&prenormalized(r, t, theta), 2, &mut redexes);
    }
    let mut out: NmNonHorn = redexes.into_iter().map(|(u, _)| [u.clone(), u]).collect();
    for t in &ts {
        let n = r.normalize(&theta.apply(t));
        out.push([n.clone(), n]);
    }
    for l in c.lits.iter().filter(|l| l.positive) {
        out.push(pair(theta.apply(&l.lhs), theta.apply(&l.rhs)));
    }
    out.sort();
    Ok(out)
}

/// Multiset extension of the lexicographic combination of the term
/// ordering and the label order.
pub fn compare_nm_horn(cfg: &OrderingConfig, a: &[Labeled], b: &[Labeled]) -> Comparison {
    multiset_compare(a, b, |x, y| cfg.compare(&x.0, &y.0).then_with(|| x.1.cmp(&y.1).into()))
}

/// Twofold multiset extension of the term ordering.
pub fn compare_nm_nh(cfg: &OrderingConfig, a: &[Pair], b: &[Pair]) -> Comparison {
    multiset_compare(a, b, |x, y| multiset_compare(x, y, |s, t| cfg.compare(s, t)))
}
