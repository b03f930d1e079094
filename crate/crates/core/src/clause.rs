//! Equational literals and clauses.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::fmt::Write as _;

use crate::term::{match_term_into, Bindings, Position, Substitution, Term, Var};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub lhs: Term,
    pub rhs: Term,
    pub positive: bool,
}

/// Left or right side of a literal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Lhs,
    Rhs,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Lhs => Side::Rhs,
            Side::Rhs => Side::Lhs,
        }
    }
}

/// Address of a subterm inside a clause.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClausePos {
    pub literal: usize,
    pub side: Side,
    pub pos: Position,
}

impl Literal {
    pub fn eq(lhs: Term, rhs: Term) -> Literal {
        Literal { lhs, rhs, positive: true }
    }

    pub fn neq(lhs: Term, rhs: Term) -> Literal {
        Literal { lhs, rhs, positive: false }
    }

    pub fn side(&self, side: Side) -> &Term {
        match side {
            Side::Lhs => &self.lhs,
            Side::Rhs => &self.rhs,
        }
    }

    pub fn flipped(&self) -> Literal {
        Literal {
            lhs: self.rhs.clone(),
            rhs: self.lhs.clone(),
            positive: self.positive,
        }
    }

    pub fn negated(&self) -> Literal {
        Literal {
            lhs: self.lhs.clone(),
            rhs: self.rhs.clone(),
            positive: !self.positive,
        }
    }

    pub fn apply(&self, s: &Substitution) -> Literal {
        Literal {
            lhs: s.apply(&self.lhs),
            rhs: s.apply(&self.rhs),
            positive: self.positive,
        }
    }

    /// Equality up to the symmetry of `≈`.
    pub fn same_as(&self, other: &Literal) -> bool {
        self.positive == other.positive
            && ((self.lhs == other.lhs && self.rhs == other.rhs)
                || (self.lhs == other.rhs && self.rhs == other.lhs))
    }

    pub fn is_trivially_true(&self) -> bool {
        self.positive && self.lhs == self.rhs
    }

    pub fn is_trivially_false(&self) -> bool {
        !self.positive && self.lhs == self.rhs
    }

    pub fn is_ground(&self) -> bool {
        self.lhs.is_ground() && self.rhs.is_ground()
    }

    /// The multiset encoding used by the literal ordering: `{s,t}` for a
    /// positive literal, `{s,s,t,t}` for a negative one.
    pub fn encoding(&self) -> Vec<&Term> {
        if self.positive {
            vec![&self.lhs, &self.rhs]
        } else {
            vec![&self.lhs, &self.lhs, &self.rhs, &self.rhs]
        }
    }

    pub fn size(&self) -> usize {
        self.lhs.size() + self.rhs.size()
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = if self.positive { "=" } else { "!=" };
        write!(f, "{} {} {}", self.lhs, op, self.rhs)
    }
}

impl fmt::Debug for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A clause as a list of literals, read as a multiset. Derived equality is
/// syntactic (order and orientation matter); use [`Clause::same_multiset`]
/// or [`Clause::is_variant`] for the coarser notions.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clause {
    pub lits: Vec<Literal>,
}

impl Clause {
    pub fn new(lits: Vec<Literal>) -> Clause {
        Clause { lits }
    }

    pub fn empty() -> Clause {
        Clause::default()
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    pub fn len(&self) -> usize {
        self.lits.len()
    }

    pub fn positive_count(&self) -> usize {
        self.lits.iter().filter(|l| l.positive).count()
    }

    pub fn is_horn(&self) -> bool {
        self.positive_count() <= 1
    }

    pub fn is_ground(&self) -> bool {
        self.lits.iter().all(Literal::is_ground)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        for l in &self.lits {
            l.lhs.collect_vars(&mut out);
            l.rhs.collect_vars(&mut out);
        }
        out
    }

    pub fn apply(&self, s: &Substitution) -> Clause {
        Clause::new(self.lits.iter().map(|l| l.apply(s)).collect())
    }

    pub fn without(&self, index: usize) -> Clause {
        let mut lits = self.lits.clone();
        lits.remove(index);
        Clause::new(lits)
    }

    /// Symbol count, variables included.
    pub fn weight(&self) -> usize {
        self.lits.iter().map(Literal::size).sum()
    }

    pub fn function_count(&self) -> usize {
        self.lits
            .iter()
            .map(|l| l.lhs.function_count() + l.rhs.function_count())
            .sum()
    }

    /// Renames variables to fresh ids starting at `*next`.
    pub fn rename_apart(&self, next: &mut u32) -> Clause {
        let mut map = HashMap::new();
        self.rename_with(&mut map, next)
    }

    pub fn rename_with(&self, map: &mut HashMap<Var, Var>, next: &mut u32) -> Clause {
        Clause::new(
            self.lits
                .iter()
                .map(|l| Literal {
                    lhs: l.lhs.rename(map, next),
                    rhs: l.rhs.rename(map, next),
                    positive: l.positive,
                })
                .collect(),
        )
    }

    /// Renaming of variables to `0, 1, ...` in order of first occurrence.
    pub fn normalize_vars(&self) -> Clause {
        let mut next = 0;
        self.rename_apart(&mut next)
    }

    pub fn subterm_at(&self, p: &ClausePos) -> Option<&Term> {
        self.lits.get(p.literal)?.side(p.side).subterm_at(&p.pos)
    }

    /// Every position at which `t` occurs, literal by literal, left side first.
    pub fn occurrences(&self, t: &Term) -> Vec<ClausePos> {
        let mut out = Vec::new();
        for (i, l) in self.lits.iter().enumerate() {
            for side in [Side::Lhs, Side::Rhs] {
                for pos in l.side(side).positions_of(t) {
                    out.push(ClausePos { literal: i, side, pos });
                }
            }
        }
        out
    }

    pub fn replace_all(&self, from: &Term, to: &Term) -> Clause {
        Clause::new(
            self.lits
                .iter()
                .map(|l| Literal {
                    lhs: l.lhs.replace_all(from, to),
                    rhs: l.rhs.replace_all(from, to),
                    positive: l.positive,
                })
                .collect(),
        )
    }

    /// Multiset equality of literals up to orientation.
    pub fn same_multiset(&self, other: &Clause) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let mut used = vec![false; other.len()];
        'outer: for l in &self.lits {
            for (j, m) in other.lits.iter().enumerate() {
                if !used[j] && l.same_as(m) {
                    used[j] = true;
                    continue 'outer;
                }
            }
            return false;
        }
        true
    }

    /// Equality up to bijective variable renaming, literal order and orientation.
    pub fn is_variant(&self, other: &Clause) -> bool {
        self.len() == other.len()
            && self.weight() == other.weight()
            && match_literals(&self.lits, &other.lits, MatchMode::Renaming)
    }

    /// A string identifying the clause up to variants. Used for ordering
    /// equal-instance closures and for duplicate detection.
    pub fn canonical(&self) -> String {
        canonical_string(self, None)
    }

    /// Canonical string of the closure `(self · theta)`: the clause up to
    /// renaming together with the values of its variables.
    pub fn canonical_with(&self, theta: &Substitution) -> String {
        canonical_string(self, Some(theta))
    }

    pub fn symbols(&self) -> Vec<(crate::term::Symbol, usize)> {
        let mut out = Vec::new();
        for l in &self.lits {
            l.lhs.symbols(&mut out);
            l.rhs.symbols(&mut out);
        }
        out
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lits.is_empty() {
            return f.write_str("$false");
        }
        for (i, l) in self.lits.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatchMode {
    /// Any substitution on the pattern side.
    Instance,
    /// Injective variable-to-variable renaming only.
    Renaming,
}

/// True if there is a substitution σ (restricted according to `mode`) and an
/// injective map from pattern literals to target literals such that every
/// pattern literal instantiated by σ equals its image up to orientation.
pub fn match_literals(pattern: &[Literal], target: &[Literal], mode: MatchMode) -> bool {
    match_literals_with(pattern, target, mode, &|_| true)
}

/// As [`match_literals`], additionally requiring `accept` to hold for the
/// final bindings.
pub fn match_literals_with(
    pattern: &[Literal],
    target: &[Literal],
    mode: MatchMode,
    accept: &dyn Fn(&Bindings) -> bool,
) -> bool {
    if pattern.len() > target.len() {
        return false;
    }
    let mut used = vec![false; target.len()];
    let mut order: Vec<usize> = (0..pattern.len()).collect();
    // most constrained literals first
    order.sort_by_key(|&i| std::cmp::Reverse(pattern[i].size()));
    search(pattern, target, &order, 0, &mut used, &Bindings::new(), mode, accept)
}

fn search(
    pattern: &[Literal],
    target: &[Literal],
    order: &[usize],
    k: usize,
    used: &mut [bool],
    b: &Bindings,
    mode: MatchMode,
    accept: &dyn Fn(&Bindings) -> bool,
) -> bool {
    if k == order.len() {
        return accept(b);
    }
    let p = &pattern[order[k]];
    for j in 0..target.len() {
        if used[j] || target[j].positive != p.positive {
            continue;
        }
        let t = &target[j];
        for (tl, tr) in [(&t.lhs, &t.rhs), (&t.rhs, &t.lhs)] {
            let mut nb = b.clone();
            if match_term_into(&p.lhs, tl, &mut nb)
                && match_term_into(&p.rhs, tr, &mut nb)
                && (mode == MatchMode::Instance || is_renaming(&nb))
            {
                used[j] = true;
                if search(pattern, target, order, k + 1, used, &nb, mode, accept) {
                    used[j] = false;
                    return true;
                }
                used[j] = false;
            }
            if tl == tr {
                break;
            }
        }
    }
    false
}

fn is_renaming(b: &Bindings) -> bool {
    let mut seen = BTreeSet::new();
    b.values().all(|t| matches!(t, Term::Var(v) if seen.insert(*v)))
}

const CANONICAL_ARRANGEMENT_CAP: usize = 5040;

fn canonical_string(c: &Clause, theta: Option<&Substitution>) -> String {
    // Sort literals by a variable-blind key, try every arrangement within
    // blocks of equal keys, rename variables by first occurrence and keep
    // the least rendering.
    let mut keyed: Vec<(String, Literal, bool)> = c
        .lits
        .iter()
        .map(|l| {
            let (a, b) = (l.lhs.shape(), l.rhs.shape());
            let sign = if l.positive { "+" } else { "-" };
            let (lit, sym) = match a.cmp(&b) {
                std::cmp::Ordering::Greater => (l.flipped(), false),
                std::cmp::Ordering::Less => (l.clone(), false),
                std::cmp::Ordering::Equal => (l.clone(), l.lhs != l.rhs),
            };
            let (a, b) = if a <= b { (a, b) } else { (b, a) };
            (format!("{sign}{a}|{b}"), lit, sym)
        })
        .collect();
    keyed.sort_by(|x, y| x.0.cmp(&y.0));

    let mut blocks: Vec<Vec<(Literal, bool)>> = Vec::new();
    let mut last: Option<&str> = None;
    for (k, l, s) in &keyed {
        if last == Some(k.as_str()) {
            blocks.last_mut().unwrap().push((l.clone(), *s));
        } else {
            blocks.push(vec![(l.clone(), *s)]);
        }
        last = Some(k);
    }

    let mut count: usize = 1;
    for b in &blocks {
        for i in 1..=b.len() {
            count = count.saturating_mul(i);
        }
        count = count.saturating_mul(1usize << b.iter().filter(|x| x.1).count().min(20));
    }

    let mut best: Option<String> = None;
    if count > CANONICAL_ARRANGEMENT_CAP {
        let lits: Vec<Literal> = blocks.into_iter().flatten().map(|x| x.0).collect();
        return render_renamed(&lits, theta);
    }
    let mut arrangement = Vec::new();
    arrangements(&blocks, 0, &mut arrangement, &mut |lits| {
        let s = render_renamed(lits, theta);
        if best.as_ref().map_or(true, |b| s < *b) {
            best = Some(s);
        }
    });
    best.unwrap_or_default()
}

fn arrangements(
    blocks: &[Vec<(Literal, bool)>],
    bi: usize,
    acc: &mut Vec<Literal>,
    f: &mut dyn FnMut(&[Literal]),
) {
    if bi == blocks.len() {
        f(acc);
        return;
    }
    let block = &blocks[bi];
    let mut perm: Vec<usize> = (0..block.len()).collect();
    permute(&mut perm, 0, &mut |p| {
        orient(block, p, 0, acc, &mut |acc| arrangements(blocks, bi + 1, acc, f));
    });
}

fn orient(
    block: &[(Literal, bool)],
    perm: &[usize],
    k: usize,
    acc: &mut Vec<Literal>,
    f: &mut dyn FnMut(&mut Vec<Literal>),
) {
    if k == perm.len() {
        f(acc);
        return;
    }
    let (lit, symmetric) = &block[perm[k]];
    acc.push(lit.clone());
    orient(block, perm, k + 1, acc, f);
    acc.pop();
    if *symmetric {
        acc.push(lit.flipped());
        orient(block, perm, k + 1, acc, f);
        acc.pop();
    }
}

fn permute(items: &mut [usize], k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, f);
        items.swap(k, i);
    }
}

fn render_renamed(lits: &[Literal], theta: Option<&Substitution>) -> String {
    let c = Clause::new(lits.to_vec());
    let mut map = HashMap::new();
    let mut next = 0;
    let renamed = c.rename_with(&mut map, &mut next);
    let mut out = renamed.to_string();
    if let Some(theta) = theta {
        let mut by_new: Vec<(Var, Var)> = map.into_iter().map(|(old, new)| (new, old)).collect();
        by_new.sort();
        for (new, old) in by_new {
            let _ = write!(out, " ;{new}={}", theta.apply(&Term::Var(old)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Term {
        Term::var(0)
    }
    fn b() -> Term {
        Term::constant("b")
    }
    fn g(t: Term) -> Term {
        Term::app("g", vec![t])
    }

    fn c6() -> Clause {
        Clause::new(vec![Literal::neq(x(), b()), Literal::eq(g(x()), Term::constant("d"))])
    }

    #[test]
    fn occurrences_of_variable() {
        let occ = c6().occurrences(&x());
        assert_eq!(occ.len(), 2);
        assert_eq!(occ[0].literal, 0);
        assert_eq!(occ[1].literal, 1);
        assert!(c6().occurrences(&Term::constant("c")).is_empty());
    }

    #[test]
    fn replace_variable() {
        assert_eq!(c6().replace_all(&x(), &b()).to_string(), "b != b | g(b) = d");
        assert_eq!(c6().replace_all(&x(), &x()), c6());
    }

    #[test]
    fn variants_and_canonical_form() {
        let y = Term::var(7);
        let renamed = Clause::new(vec![
            Literal::eq(Term::constant("d"), g(y.clone())),
            Literal::neq(b(), y),
        ]);
        assert!(c6().is_variant(&renamed));
        assert_eq!(c6().canonical(), renamed.canonical());
        let other = Clause::new(vec![Literal::neq(x(), b()), Literal::eq(g(b()), Term::constant("d"))]);
        assert!(!c6().is_variant(&other));
        assert_ne!(c6().canonical(), other.canonical());
    }

    #[test]
    fn canonical_distinguishes_variable_sharing() {
        let f = |a: Term, c: Term| Term::app("f", vec![a, c]);
        let shared = Clause::new(vec![Literal::eq(f(Term::var(0), Term::var(1)), b()), Literal::eq(Term::var(0), b())]);
        let other = Clause::new(vec![Literal::eq(f(Term::var(0), Term::var(1)), b()), Literal::eq(Term::var(1), b())]);
        assert!(!shared.is_variant(&other));
        assert_ne!(shared.canonical(), other.canonical());
    }
}
