//! Ground entailment by case splitting and congruence closure.

use crate::cc::CongruenceClosure;
use crate::clause::{Clause, Literal};
use crate::term::Term;

/// Whether the ground `premises` entail the ground `goal`.
pub fn ground_entails(premises: &[Clause], goal: &Clause) -> bool {
    let mut eqs = Vec::new();
    let mut neqs = Vec::new();
    for l in &goal.lits {
        if l.positive {
            neqs.push((l.lhs.clone(), l.rhs.clone()));
        } else {
            eqs.push((l.lhs.clone(), l.rhs.clone()));
        }
    }
    let clauses: Vec<&[Literal]> = premises.iter().map(|c| c.lits.as_slice()).collect();
    !satisfiable(&clauses, &mut eqs, &mut neqs)
}

/// Whether a set of ground clauses has an equational model.
pub fn ground_satisfiable(clauses: &[Clause]) -> bool {
    let refs: Vec<&[Literal]> = clauses.iter().map(|c| c.lits.as_slice()).collect();
    satisfiable(&refs, &mut Vec::new(), &mut Vec::new())
}

fn known_distinct(cc: &mut CongruenceClosure, neqs: &[(Term, Term)], s: &Term, t: &Term) -> bool {
    neqs.iter()
        .any(|(u, v)| (cc.equal(u, s) && cc.equal(v, t)) || (cc.equal(u, t) && cc.equal(v, s)))
}

fn satisfiable(clauses: &[&[Literal]], eqs: &mut Vec<(Term, Term)>, neqs: &mut Vec<(Term, Term)>) -> bool {
    let mut cc = CongruenceClosure::from_equations(eqs.iter().map(|(s, t)| (s, t)));
    if neqs.iter().any(|(s, t)| cc.equal(s, t)) {
        return false;
    }
    let mut pending: Vec<Vec<&Literal>> = Vec::new();
    for c in clauses {
        let mut open = Vec::new();
        let mut satisfied = false;
        for l in c.iter() {
            let equal = cc.equal(&l.lhs, &l.rhs);
            if l.positive && equal || !l.positive && known_distinct(&mut cc, neqs, &l.lhs, &l.rhs) {
                satisfied = true;
                break;
            }
            if !l.positive && equal {
                continue;
            }
            open.push(l);
        }
        if satisfied {
            continue;
        }
        if open.is_empty() {
            return false;
        }
        pending.push(open);
    }
    // the congruence classes of `eqs` form a model of every assumption
    let Some(branch) = pending
        .iter()
        .min_by_key(|c| (c.len(), std::cmp::Reverse(c.iter().map(|l| l.size()).sum::<usize>())))
    else {
        return true;
    };
    for (k, l) in branch.iter().enumerate() {
        let (e0, n0) = (eqs.len(), neqs.len());
        for prev in &branch[..k] {
            assume(&prev.negated(), eqs, neqs);
        }
        assume(l, eqs, neqs);
        let sat = satisfiable(clauses, eqs, neqs);
        eqs.truncate(e0);
        neqs.truncate(n0);
        if sat {
            return true;
        }
    }
    false
}

fn assume(l: &Literal, eqs: &mut Vec<(Term, Term)>, neqs: &mut Vec<(Term, Term)>) {
    if l.positive {
        eqs.push((l.lhs.clone(), l.rhs.clone()));
    } else {
        neqs.push((l.lhs.clone(), l.rhs.clone()));
    }
}
