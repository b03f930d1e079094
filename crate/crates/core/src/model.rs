//! Candidate interpretations built by induction over the term ordering.

use std::fmt;

use crate::clause::{Clause, Side};
use crate::order::{Comparison, OrderingConfig};
use crate::rewrite::{closure_compare, GroundClosure, GroundRewriteSystem, Variant};
use crate::term::Term;

/// One produced rule and the closure that produced it.
#[derive(Clone, Debug)]
pub struct Production {
    pub lhs: Term,
    pub rhs: Term,
    pub closure: GroundClosure,
}

#[derive(Clone, Debug)]
pub struct CandidateInterpretation {
    pub rstar: GroundRewriteSystem,
    pub log: Vec<Production>,
}

impl fmt::Display for CandidateInterpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.log {
            writeln!(f, "{} -> {}  produced by {}", p.lhs, p.rhs, p.closure)?;
        }
        Ok(())
    }
}

fn literal_false(r: &GroundRewriteSystem, s: &Term, t: &Term, positive: bool) -> bool {
    r.equal(s, t) != positive
}

fn clause_false(r: &GroundRewriteSystem, c: &Clause) -> bool {
    c.lits.iter().all(|l| literal_false(r, &l.lhs, &l.rhs, l.positive))
}

/// The positive literal side that would produce `s → s'` under the variant's
/// productivity conditions, if any.
fn productive_side(
    cfg: &OrderingConfig,
    r: &GroundRewriteSystem,
    variant: Variant,
    inst: &Clause,
    s: &Term,
) -> Option<Term> {
    if r.is_reducible(s) || !clause_false(r, inst) {
        return None;
    }
    for (i, l) in inst.lits.iter().enumerate().filter(|(_, l)| l.positive) {
        for side in [Side::Lhs, Side::Rhs] {
            if l.side(side) != s {
                continue;
            }
            let s2 = l.side(side.other());
            if cfg.compare(s, s2) != Comparison::Greater {
                continue;
            }
            match variant {
                Variant::Horn => {
                    if cfg.is_maximal_term(inst, s, Some((i, side)), true) {
                        return Some(s2.clone());
                    }
                }
                Variant::NonHorn => {
                    if cfg.is_maximal(inst, i, true) && clause_false(&r.with_rule(s.clone(), s2.clone()), &inst.without(i)) {
                        return Some(s2.clone());
                    }
                }
            }
        }
    }
    None
}

/// Builds `R_*` for a finite set of ground closures.
pub fn construct_rstar(n: &[GroundClosure], variant: Variant, cfg: &OrderingConfig) -> CandidateInterpretation {
    let instances: Vec<Clause> = n.iter().map(|c| c.instance()).collect();
    let mut candidates: Vec<Term> = Vec::new();
    for inst in &instances {
        for l in inst.lits.iter().filter(|l| l.positive) {
            for t in [&l.lhs, &l.rhs] {
                if !candidates.contains(t) {
                    candidates.push(t.clone());
                }
            }
        }
    }
    candidates.sort_by(|a, b| match cfg.compare(a, b) {
        Comparison::Less => std::cmp::Ordering::Less,
        Comparison::Greater => std::cmp::Ordering::Greater,
        _ => a.cmp(b),
    });
    let mut r = GroundRewriteSystem::empty();
    let mut log = Vec::new();
    for s in candidates {
        let mut best: Option<(&GroundClosure, Term)> = None;
        for (clo, inst) in n.iter().zip(&instances) {
            let Some(s2) = productive_side(cfg, &r, variant, inst, &s) else { continue };
            let better = match &best {
                None => true,
                Some((b, _)) => closure_compare(cfg, &r, variant, clo, b).expect("R_s is left-reduced") == Comparison::Less,
            };
            if better {
                best = Some((clo, s2));
            }
        }
        if let Some((clo, s2)) = best {
            r = r.with_rule(s.clone(), s2.clone());
            log.push(Production { lhs: s, rhs: s2, closure: clo.clone() });
        }
    }
    CandidateInterpretation { rstar: r, log }
}

#[derive(Clone, Debug)]
pub struct ModelCheck {
    pub holds: bool,
    /// The `≻≻_R`-smallest false closure.
    pub first_failure: Option<GroundClosure>,
}

pub fn check_model(r: &GroundRewriteSystem, n: &[GroundClosure], variant: Variant, cfg: &OrderingConfig) -> ModelCheck {
    let mut worst: Option<&GroundClosure> = None;
    for c in n.iter().filter(|c| !c.is_true_in(r)) {
        let smaller = match worst {
            None => true,
            Some(w) => closure_compare(cfg, r, variant, c, w).map(|o| o == Comparison::Less).unwrap_or(false),
        };
        if smaller {
            worst = Some(c);
        }
    }
    ModelCheck { holds: worst.is_none(), first_failure: worst.cloned() }
}

/// Outcome of the saturate-then-build-a-model check on one closure set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SaturationCheck {
    /// Saturated without the empty closure, and `R_*` satisfies every closure.
    Model { closures: usize, rules: usize },
    /// The empty closure was derived, and the input is unsatisfiable.
    Refuted { closures: usize },
    /// The closure cap was hit.
    Capped,
}

/// Saturates Horn closures under the ground calculus, then checks that a
/// saturation without the empty closure is a model of `R_*` and that a
/// refutation is confirmed by ground entailment. An `Err` describes a failure.
pub fn check_saturation(input: &[GroundClosure], cfg: &OrderingConfig, cap: usize) -> Result<SaturationCheck, String> {
    let sat = crate::calculus::saturate_ground(input, cfg, false, cap);
    if !sat.complete {
        return Ok(SaturationCheck::Capped);
    }
    let instances: Vec<Clause> = input.iter().map(|c| c.instance()).collect();
    let satisfiable = crate::lab::ground_satisfiable(&instances);
    if sat.contains_empty {
        if satisfiable {
            return Err("empty closure derived from a satisfiable input".into());
        }
        return Ok(SaturationCheck::Refuted { closures: sat.closures.len() });
    }
    let m = construct_rstar(&sat.closures, Variant::Horn, cfg);
    let check = check_model(&m.rstar, &sat.closures, Variant::Horn, cfg);
    if let Some(c) = check.first_failure {
        return Err(format!("R_* = {} falsifies {c}", m.rstar));
    }
    if !satisfiable {
        return Err("saturated without the empty closure but the input is unsatisfiable".into());
    }
    Ok(SaturationCheck::Model { closures: sat.closures.len(), rules: m.rstar.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::{parse_closure, parse_term};

    fn clo(c: &str, th: &str) -> GroundClosure {
        let (c, th) = parse_closure(c, th).unwrap();
        GroundClosure::new(c, th).unwrap()
    }

    #[test]
    fn unit_produces_its_rule() {
        let cfg = OrderingConfig::kbo_uniform();
        let n = vec![clo("f(b) = b", "")];
        let m = construct_rstar(&n, Variant::Horn, &cfg);
        assert_eq!(m.rstar.rules(), &[(parse_term("f(b)").unwrap(), parse_term("b").unwrap())]);
        assert!(check_model(&m.rstar, &n, Variant::Horn, &cfg).holds);
        let empty = construct_rstar(&[], Variant::Horn, &cfg);
        assert!(empty.rstar.is_empty());
    }

    #[test]
    fn failing_closure_reported() {
        let cfg = OrderingConfig::kbo_uniform();
        let n = vec![clo("b = c", "")];
        let check = check_model(&GroundRewriteSystem::empty(), &n, Variant::Horn, &cfg);
        assert!(!check.holds);
        assert!(check.first_failure.unwrap().same_closure(&n[0]));
    }

    #[test]
    fn non_horn_production() {
        let cfg = OrderingConfig::lpo(&["f", "c6", "c5", "c4", "c3", "c2", "c1", "b"]);
        let th = "X1 -> b, X2 -> b, X3 -> b";
        let first = clo("f(X1) = c1 | f(X2) = c2 | f(X3) = c3", th);
        let m = construct_rstar(&[first.clone()], Variant::NonHorn, &cfg);
        assert_eq!(m.rstar.rules(), &[(parse_term("f(b)").unwrap(), parse_term("c3").unwrap())]);
        assert!(m.log[0].closure.same_closure(&first));
    }

    #[test]
    fn horn_conditions() {
        let cfg = OrderingConfig::kbo_uniform();
        // the maximal term also occurs negatively, so nothing is produced from it
        let n = vec![clo("f(b) != c | f(b) = d", "")];
        let m = construct_rstar(&n, Variant::Horn, &cfg);
        assert!(m.rstar.is_empty());
        assert!(check_model(&m.rstar, &n, Variant::Horn, &cfg).holds);
    }
}
