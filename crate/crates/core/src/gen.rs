//! Random terms, clauses and substitutions over small signatures, for the
//! randomized property suites.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::clause::{Clause, Literal};
use crate::term::{Substitution, Symbol, Term, Var};

#[derive(Clone, Debug)]
pub struct Signature {
    pub symbols: Vec<(Symbol, usize)>,
}

impl Signature {
    pub fn new(symbols: &[(&str, usize)]) -> Signature {
        Signature {
            symbols: symbols.iter().map(|(n, a)| (Symbol::intern(n), *a)).collect(),
        }
    }

    /// Two constants, two unary and one binary symbol.
    pub fn small() -> Signature {
        Signature::new(&[("a", 0), ("b", 0), ("f", 1), ("g", 1), ("h", 2)])
    }

    pub fn constants(&self) -> Vec<Symbol> {
        self.symbols.iter().filter(|(_, a)| *a == 0).map(|(f, _)| *f).collect()
    }
}

/// A term of depth at most `depth`; variables are drawn from `0..nvars`
/// (none if `nvars` is 0).
pub fn term<R: Rng>(rng: &mut R, sig: &Signature, depth: usize, nvars: u32) -> Term {
    let consts = sig.constants();
    let leaf = depth == 0 || rng.gen_bool(0.35);
    if leaf {
        if nvars > 0 && rng.gen_bool(0.4) {
            return Term::var(rng.gen_range(0..nvars));
        }
        return Term::App(*consts.choose(rng).expect("signature without constants"), Vec::new());
    }
    let (f, arity) = *sig.symbols.choose(rng).unwrap();
    let args = (0..arity).map(|_| term(rng, sig, depth - 1, nvars)).collect();
    Term::App(f, args)
}

pub fn ground_term<R: Rng>(rng: &mut R, sig: &Signature, depth: usize) -> Term {
    term(rng, sig, depth, 0)
}

pub fn literal<R: Rng>(rng: &mut R, sig: &Signature, depth: usize, nvars: u32, positive: bool) -> Literal {
    Literal {
        lhs: term(rng, sig, depth, nvars),
        rhs: term(rng, sig, depth, nvars),
        positive,
    }
}

/// A clause with `1..=max_lits` literals. Horn clauses have at most one
/// positive literal.
pub fn clause<R: Rng>(rng: &mut R, sig: &Signature, depth: usize, nvars: u32, max_lits: usize, horn: bool) -> Clause {
    let n = rng.gen_range(1..=max_lits);
    let mut has_pos = false;
    let lits = (0..n)
        .map(|_| {
            let mut positive = rng.gen_bool(0.5);
            if horn && positive && has_pos {
                positive = false;
            }
            has_pos |= positive;
            literal(rng, sig, depth, nvars, positive)
        })
        .collect();
    Clause::new(lits)
}

/// A grounding substitution for every variable of `c`.
pub fn grounding<R: Rng>(rng: &mut R, sig: &Signature, c: &Clause, depth: usize) -> Substitution {
    Substitution::from_pairs(c.vars().into_iter().map(|v| (v, ground_term(rng, sig, depth))))
}

/// A substitution on `0..nvars` mapping into terms over the same variables.
pub fn substitution<R: Rng>(rng: &mut R, sig: &Signature, depth: usize, nvars: u32) -> Substitution {
    let mut s = Substitution::new();
    for v in 0..nvars {
        if rng.gen_bool(0.6) {
            s.insert(Var(v), term(rng, sig, depth, nvars));
        }
    }
    s
}

/// A random map of variables onto variables (not necessarily injective).
pub fn var_merge<R: Rng>(rng: &mut R, c: &Clause) -> Substitution {
    let vars: Vec<Var> = c.vars().into_iter().collect();
    let mut s = Substitution::new();
    for v in &vars {
        let w = *vars.choose(rng).unwrap();
        s.insert(*v, Term::Var(w));
    }
    s
}

/// A random set of ground Horn closures over the constants `a`, `b`, `c` and
/// the unary symbols `f`, `g`, whose instances only use terms from a fixed
/// universe of 12 terms.
pub fn horn_closure_problem<R: Rng>(rng: &mut R, max_clauses: usize, max_lits: usize) -> Vec<crate::rewrite::GroundClosure> {
    let sig = Signature::new(&[("a", 0), ("b", 0), ("c", 0), ("f", 1), ("g", 1)]);
    let universe: Vec<Term> = [
        "a", "b", "c", "f(a)", "f(b)", "f(c)", "g(a)", "g(b)", "g(c)", "f(f(a))", "g(f(a))", "f(g(b))",
    ]
    .iter()
    .map(|s| crate::problem::parse_term(s).expect("universe term"))
    .collect();
    let n = rng.gen_range(1..=max_clauses);
    let mut out = Vec::new();
    while out.len() < n {
        let c = clause(rng, &sig, 1, 2, max_lits, true);
        let theta = Substitution::from_pairs(c.vars().into_iter().map(|v| (v, universe[rng.gen_range(0..6)].clone())));
        let inst = c.apply(&theta);
        let inside = inst.lits.iter().all(|l| {
            [&l.lhs, &l.rhs].iter().all(|t| t.subterms().into_iter().all(|s| universe.contains(s)))
        });
        if inside {
            out.push(crate::rewrite::GroundClosure::new(c, theta).expect("grounding substitution"));
        }
    }
    out
}

/// A random left-reduced ground rewrite system contained in the ordering,
/// with up to `max_rules` rules over terms of depth at most `depth`.
pub fn rewrite_system<R: Rng>(
    rng: &mut R,
    sig: &Signature,
    cfg: &crate::order::OrderingConfig,
    depth: usize,
    max_rules: usize,
) -> crate::rewrite::GroundRewriteSystem {
    let target = rng.gen_range(0..=max_rules);
    let mut rules: Vec<(Term, Term)> = Vec::new();
    for _ in 0..target * 8 {
        if rules.len() == target {
            break;
        }
        let (s, t) = (ground_term(rng, sig, depth), ground_term(rng, sig, depth));
        let (l, r) = match cfg.compare(&s, &t) {
            crate::order::Comparison::Greater => (s, t),
            crate::order::Comparison::Less => (t, s),
            _ => continue,
        };
        if rules.iter().any(|(m, _)| m.contains(&l) || l.contains(m)) {
            continue;
        }
        rules.push((l, r));
    }
    crate::rewrite::GroundRewriteSystem::new(rules).expect("ground rules")
}
