//! Randomized checks of the ordering lemmas. Each function draws one case
//! from `rng`, checks it, and returns the number of comparisons made or a
//! description of the first violation.

use rand::Rng;

use super::{SystemEnumerator, Universe};
use crate::calculus::{ground_ef, ground_er, ground_ps1, ground_ps2, ClosureInference};
use crate::clause::{Clause, Literal};
use crate::gen::{self, Signature};
use crate::order::{Comparison, OrderingConfig};
use crate::rewrite::{closure_compare, GroundClosure, GroundRewriteSystem, Labeled, Variant};
use crate::term::{Position, Substitution, Term, Var};

/// Rewrite systems examined per question.
pub const SYSTEMS_PER_CASE: usize = 24;

pub type CaseResult = Result<usize, String>;

fn compare(cfg: &OrderingConfig, r: &GroundRewriteSystem, v: Variant, a: &GroundClosure, b: &GroundClosure) -> Result<Comparison, String> {
    closure_compare(cfg, r, v, a, b).map_err(|e| e.to_string())
}

fn systems(instances: &[Clause], cfg: &OrderingConfig) -> Vec<GroundRewriteSystem> {
    let universe = Universe::of_clauses(instances);
    SystemEnumerator::new(&universe, cfg).take(SYSTEMS_PER_CASE).collect()
}

fn random_closure<R: Rng>(rng: &mut R, sig: &Signature, horn: bool, max_lits: usize) -> GroundClosure {
    let c = gen::clause(rng, sig, 2, 3, max_lits, horn);
    let theta = gen::grounding(rng, sig, &c, 1);
    GroundClosure::new(c, theta).expect("grounding substitution")
}

/// Normalizes `t` by rewriting a randomly chosen redex at each step and
/// records every redex with its label: `m` at the root, the inner label
/// elsewhere.
fn random_strategy_rm<R: Rng>(rng: &mut R, r: &GroundRewriteSystem, t: &Term, m: u8) -> Vec<Labeled> {
    let inner = if m == 0 { 1 } else { m };
    let mut cur = t.clone();
    let mut out = Vec::new();
    loop {
        let redexes: Vec<(Position, Term)> = cur
            .subterms_with_positions()
            .into_iter()
            .filter(|(_, s)| r.rhs(s).is_some())
            .map(|(p, s)| (p, s.clone()))
            .collect();
        if redexes.is_empty() {
            break;
        }
        let (p, s) = &redexes[rng.gen_range(0..redexes.len())];
        out.push((s.clone(), if p.is_root() { m } else { inner }));
        cur = cur.replace_at(p, r.rhs(s).unwrap()).unwrap();
    }
    out.sort();
    out
}

/// Labeled redex multisets do not depend on the rewrite strategy.
pub fn rm_strategy_independence<R: Rng>(rng: &mut R, cfg: &OrderingConfig) -> CaseResult {
    let sig = Signature::small();
    let r = gen::rewrite_system(rng, &sig, cfg, 2, 4);
    let t = gen::ground_term(rng, &sig, 3);
    let mut checks = 0;
    for m in 0..=2 {
        let mut expected = r.rm_horn(&t, m).map_err(|e| e.to_string())?;
        expected.sort();
        for _ in 0..10 {
            let got = random_strategy_rm(rng, &r, &t, m);
            if got != expected {
                return Err(format!("rm({t}, {m}) under R = {r}: {expected:?} vs {got:?}"));
            }
            checks += 1;
        }
    }
    Ok(checks)
}

/// A closure is larger than a proper instance with the same ground instance.
pub fn instance_ordering<R: Rng>(rng: &mut R, cfg: &OrderingConfig, variant: Variant) -> CaseResult {
    let sig = Signature::small();
    let (c, sigma, cs) = loop {
        let c = gen::clause(rng, &sig, 2, 3, 3, variant == Variant::Horn);
        let sigma = if rng.gen_bool(0.5) { gen::var_merge(rng, &c) } else { gen::substitution(rng, &sig, 1, 3) };
        let cs = c.apply(&sigma);
        if !cs.is_variant(&c) {
            break (c, sigma, cs);
        }
    };
    let theta2 = gen::grounding(rng, &sig, &cs, 1);
    let theta = Substitution::from_pairs(c.vars().into_iter().map(|v| (v, theta2.apply(&sigma.apply(&Term::Var(v))))));
    let general = GroundClosure::new(c, theta).map_err(|e| e.to_string())?;
    let special = GroundClosure::new(cs, theta2).map_err(|e| e.to_string())?;
    let r = gen::rewrite_system(rng, &sig, cfg, 2, 4);
    match compare(cfg, &r, variant, &general, &special)? {
        Comparison::Greater => Ok(1),
        o => Err(format!("{general} vs {special} under R = {r}: {o}")),
    }
}

fn inferences(variant: Variant, n: &[GroundClosure], cfg: &OrderingConfig) -> Vec<ClosureInference> {
    let mut out = Vec::new();
    for c in n {
        out.extend(ground_er(c, cfg));
        if variant == Variant::NonHorn {
            out.extend(ground_ef(c, cfg));
        }
        for d in n {
            out.extend(ground_ps1(d, c, cfg));
            out.extend(ground_ps2(d, c, cfg));
        }
    }
    out
}

/// Every ground inference has a conclusion below its right or only premise
/// under every rewrite system where the inference is relevant: always for
/// resolution and factoring, and for superposition when the system contains
/// the rewrite step (and, non-Horn, the left premise is the smaller one).
pub fn inference_reduces<R: Rng>(rng: &mut R, cfg: &OrderingConfig, variant: Variant) -> CaseResult {
    let sig = Signature::small();
    let horn = variant == Variant::Horn;
    let mut infs = Vec::new();
    for _ in 0..50 {
        let n: Vec<GroundClosure> = (0..rng.gen_range(1..=3)).map(|_| random_closure(rng, &sig, horn, 3)).collect();
        infs = inferences(variant, &n, cfg);
        if !infs.is_empty() {
            break;
        }
    }
    let mut checks = 0;
    for inf in &infs {
        let main = inf.main_premise();
        let mut instances: Vec<Clause> = inf.premises.iter().map(|p| p.instance()).collect();
        instances.push(inf.conclusion.instance());
        let mut rs = systems(&instances, cfg);
        if let Some((t, t2)) = &inf.step {
            let extra: Vec<GroundRewriteSystem> = rs
                .iter()
                .filter(|r| !r.contains(t, t2))
                .filter_map(|r| {
                    let with = r.with_rule(t.clone(), t2.clone());
                    with.is_left_reduced().then_some(with)
                })
                .collect();
            rs.extend(extra);
        }
        for r in &rs {
            if inf.rule.is_superposition() {
                let (t, t2) = inf.step.as_ref().expect("superposition step");
                if !r.contains(t, t2) {
                    continue;
                }
                if !horn && compare(cfg, r, variant, &inf.premises[0], main)? != Comparison::Less {
                    continue;
                }
            }
            checks += 1;
            let o = compare(cfg, r, variant, &inf.conclusion, main)?;
            if o != Comparison::Less {
                return Err(format!("{} inference {} from {} under R = {r}: conclusion is {o}", inf.rule, inf.conclusion, main));
            }
        }
    }
    Ok(checks)
}

/// Replacing `x ≉ t ∨ C` by `C{x ↦ t}` decreases every false instance. For
/// the non-Horn ordering `x` must not occur in positive literals.
pub fn der_reduces<R: Rng>(rng: &mut R, cfg: &OrderingConfig, variant: Variant) -> CaseResult {
    let sig = Signature::small();
    let horn = variant == Variant::Horn;
    let mut c = gen::clause(rng, &sig, 2, 3, 3, horn);
    let x = Var(rng.gen_range(0..3));
    if !horn {
        c = Clause::new(c.lits.into_iter().filter(|l| !l.positive || !(l.lhs.occurs(x) || l.rhs.occurs(x))).collect());
    }
    let t = gen::term(rng, &sig, 1, 3);
    if t.occurs(x) {
        return Ok(0);
    }
    let mut lits = vec![Literal { lhs: Term::Var(x), rhs: t.clone(), positive: false }];
    lits.extend(c.lits.iter().cloned());
    let premise = Clause::new(lits);
    let conclusion = c.apply(&Substitution::from_pairs([(x, t.clone())]));
    let mut theta = gen::grounding(rng, &sig, &premise, 1);
    if rng.gen_bool(0.5) {
        let tt = theta.apply(&t);
        theta.insert(x, tt);
    }
    let p = GroundClosure::new(premise, theta.clone()).map_err(|e| e.to_string())?;
    let q = GroundClosure::new(conclusion, theta).map_err(|e| e.to_string())?;
    let mut checks = 0;
    for r in systems(&[p.instance(), q.instance()], cfg) {
        if p.is_true_in(&r) {
            continue;
        }
        checks += 1;
        let o = compare(cfg, &r, variant, &p, &q)?;
        if o != Comparison::Greater {
            return Err(format!("{p} vs {q} under R = {r}: {o}"));
        }
    }
    Ok(checks)
}

/// The closure ordering is a strict total order on sampled closures.
pub fn closure_order_total<R: Rng>(rng: &mut R, cfg: &OrderingConfig, variant: Variant) -> CaseResult {
    let sig = Signature::small();
    let horn = variant == Variant::Horn;
    let cs: Vec<GroundClosure> = (0..3).map(|_| random_closure(rng, &sig, horn, 2)).collect();
    let r = gen::rewrite_system(rng, &sig, cfg, 2, 4);
    let mut table = [[Comparison::Equal; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            table[i][j] = compare(cfg, &r, variant, &cs[i], &cs[j])?;
        }
    }
    for i in 0..3 {
        if table[i][i] != Comparison::Equal {
            return Err(format!("{} is not equal to itself", cs[i]));
        }
        for j in 0..3 {
            let same = cs[i].same_closure(&cs[j]);
            if table[i][j] == Comparison::Incomparable || (table[i][j] == Comparison::Equal) != same {
                return Err(format!("{} vs {}: {} under R = {r}", cs[i], cs[j], table[i][j]));
            }
            if table[i][j] != table[j][i].reverse() {
                return Err(format!("{} vs {} is not antisymmetric", cs[i], cs[j]));
            }
            for k in 0..3 {
                if table[i][j] == Comparison::Less && table[j][k] == Comparison::Less && table[i][k] != Comparison::Less {
                    return Err(format!("{} < {} < {} is not transitive under R = {r}", cs[i], cs[j], cs[k]));
                }
            }
        }
    }
    Ok(9)
}

fn below(r: &GroundRewriteSystem, s: &Term, cfg: &OrderingConfig) -> GroundRewriteSystem {
    GroundRewriteSystem::new(r.rules().iter().filter(|(l, _)| cfg.greater(s, l)).cloned().collect())
        .expect("ground rules")
}

fn sides(c: &Clause, positive: bool) -> impl Iterator<Item = &Term> {
    c.lits.iter().filter(move |l| l.positive == positive).flat_map(|l| [&l.lhs, &l.rhs])
}

/// Facts about the candidate interpretation of a random Horn closure set:
/// truth below a term is preserved upward, producing closures are true while
/// their residues are false, the orderings under `R_s` and `R_*` agree on
/// closures whose strictly maximal term `s` occurs only positively, and a
/// producing closure lies below every closure that contains its left-hand
/// side negatively or below the top.
pub fn candidate_interpretation<R: Rng>(rng: &mut R, cfg: &OrderingConfig) -> CaseResult {
    use crate::model::construct_rstar;
    let n = gen::horn_closure_problem(rng, 8, 2);
    let m = construct_rstar(&n, Variant::Horn, cfg);
    let rstar = &m.rstar;
    let mut checks = 0;

    let terms: Vec<Term> = Universe::of_clauses(&n.iter().map(|c| c.instance()).collect::<Vec<_>>()).terms().to_vec();
    for clo in &n {
        let inst = clo.instance();
        for s in &terms {
            let neg_below = sides(&inst, false).all(|t| cfg.greater(s, t));
            let pos_below = sides(&inst, true).all(|t| t == s || cfg.greater(s, t));
            if neg_below && pos_below && clo.is_true_in(&below(rstar, s, cfg)) {
                checks += 1;
                if !clo.is_true_in(rstar) {
                    return Err(format!("{clo} is true in R_{s} but false in R_* = {rstar}"));
                }
            }
        }
    }

    for p in &m.log {
        let inst = p.closure.instance();
        let Some(i) = inst.lits.iter().position(|l| l.positive && ((l.lhs == p.lhs && l.rhs == p.rhs) || (l.rhs == p.lhs && l.lhs == p.rhs)))
        else {
            return Err(format!("{} does not contain {} = {}", p.closure, p.lhs, p.rhs));
        };
        let residue = GroundClosure::new(p.closure.clause.without(i), p.closure.theta.clone()).map_err(|e| e.to_string())?;
        checks += 1;
        if !p.closure.is_true_in(rstar) || residue.is_true_in(rstar) {
            return Err(format!("producing closure {} or its residue has the wrong truth value in {rstar}", p.closure));
        }
        for c in &n {
            let ci = c.instance();
            let negative = sides(&ci, false).any(|t| t.contains(&p.lhs));
            let below_top = sides(&ci, true).any(|t| t != &p.lhs && t.contains(&p.lhs));
            if (negative || below_top) && !c.same_closure(&p.closure) {
                checks += 1;
                let o = compare(cfg, rstar, Variant::Horn, &p.closure, c)?;
                if o != Comparison::Less {
                    return Err(format!("producer {} vs {c} under {rstar}: {o}", p.closure));
                }
            }
        }
    }

    let only_positive_max = |c: &Clause, s: &Term| {
        sides(c, false).all(|t| cfg.greater(s, t))
            && c.lits.iter().filter(|l| l.positive).all(|l| (l.lhs == *s && cfg.greater(s, &l.rhs)) || (l.rhs == *s && cfg.greater(s, &l.lhs)) || (cfg.greater(s, &l.lhs) && cfg.greater(s, &l.rhs)))
            && sides(c, true).filter(|t| *t == s).count() == 1
    };
    for a in &n {
        for b in &n {
            let (ai, bi) = (a.instance(), b.instance());
            for s in sides(&ai, true) {
                if only_positive_max(&ai, s) && only_positive_max(&bi, s) {
                    checks += 1;
                    let rs = below(rstar, s, cfg);
                    let lo = compare(cfg, &rs, Variant::Horn, a, b)?;
                    let hi = compare(cfg, rstar, Variant::Horn, a, b)?;
                    if lo != hi {
                        return Err(format!("{a} vs {b}: {lo} under R_{s}, {hi} under R_* = {rstar}"));
                    }
                }
            }
        }
    }
    Ok(checks)
}
