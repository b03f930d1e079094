//! First-order terms, positions and structural utilities.
//!
//! Function symbols are interned process-wide so that terms stay cheap to
//! clone, hash and compare. Variables are plain numeric ids and are local to
//! the clause they appear in.

mod subst;
mod unify;

pub use subst::Substitution;
pub use unify::{match_term, match_term_into, mgu, mgu_pairs, Bindings, UnifyError};

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{OnceLock, RwLock};

/// An interned function symbol.
///
/// Equality and hashing use the intern id; ordering is by name so that any
/// sorted output is independent of interning order.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Symbol(u32);

struct Interner {
    ids: HashMap<&'static str, u32>,
    names: Vec<&'static str>,
}

fn interner() -> &'static RwLock<Interner> {
    static INTERNER: OnceLock<RwLock<Interner>> = OnceLock::new();
    INTERNER.get_or_init(|| {
        RwLock::new(Interner {
            ids: HashMap::new(),
            names: Vec::new(),
        })
    })
}

impl Symbol {
    pub fn intern(name: &str) -> Symbol {
        if let Some(&id) = interner().read().unwrap().ids.get(name) {
            return Symbol(id);
        }
        let mut table = interner().write().unwrap();
        if let Some(&id) = table.ids.get(name) {
            return Symbol(id);
        }
        let leaked: &'static str = Box::leak(name.to_owned().into_boxed_str());
        let id = table.names.len() as u32;
        table.names.push(leaked);
        table.ids.insert(leaked, id);
        Symbol(id)
    }

    pub fn name(self) -> &'static str {
        interner().read().unwrap().names[self.0 as usize]
    }
}

impl PartialOrd for Symbol {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Symbol {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        if self.0 == other.0 {
            std::cmp::Ordering::Equal
        } else {
            self.name().cmp(other.name())
        }
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(pub u32);

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X{}", self.0)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X{}", self.0)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(Var),
    App(Symbol, Vec<Term>),
}

/// A path into a term: 1-based argument indices, empty for the root.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Position(pub Vec<usize>);

impl Position {
    pub fn root() -> Position {
        Position(Vec::new())
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn child(&self, index: usize) -> Position {
        let mut path = self.0.clone();
        path.push(index);
        Position(path)
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        f.write_str(&parts.join("."))
    }
}

impl Term {
    pub fn var(id: u32) -> Term {
        Term::Var(Var(id))
    }

    pub fn constant(name: &str) -> Term {
        Term::App(Symbol::intern(name), Vec::new())
    }

    pub fn app(name: &str, args: Vec<Term>) -> Term {
        Term::App(Symbol::intern(name), args)
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn as_var(&self) -> Option<Var> {
        match self {
            Term::Var(v) => Some(*v),
            Term::App(..) => None,
        }
    }

    pub fn head(&self) -> Option<Symbol> {
        match self {
            Term::Var(_) => None,
            Term::App(f, _) => Some(*f),
        }
    }

    pub fn args(&self) -> &[Term] {
        match self {
            Term::Var(_) => &[],
            Term::App(_, args) => args,
        }
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    /// Number of symbol occurrences, variables included.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, args) => args.iter().map(|a| a.depth() + 1).max().unwrap_or(0),
        }
    }

    pub fn function_count(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, args) => 1 + args.iter().map(Term::function_count).sum::<usize>(),
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        match self {
            Term::Var(v) => {
                out.insert(*v);
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    /// Occurrence count of every variable.
    pub fn var_counts(&self, out: &mut HashMap<Var, i64>, sign: i64) {
        match self {
            Term::Var(v) => *out.entry(*v).or_insert(0) += sign,
            Term::App(_, args) => args.iter().for_each(|a| a.var_counts(out, sign)),
        }
    }

    pub fn occurs(&self, v: Var) -> bool {
        match self {
            Term::Var(w) => *w == v,
            Term::App(_, args) => args.iter().any(|a| a.occurs(v)),
        }
    }

    /// True if `sub` occurs somewhere in `self`, the root included.
    pub fn contains(&self, sub: &Term) -> bool {
        self == sub || self.args().iter().any(|a| a.contains(sub))
    }

    pub fn is_proper_subterm_of(&self, other: &Term) -> bool {
        other.args().iter().any(|a| a.contains(self))
    }

    pub fn subterm_at(&self, pos: &Position) -> Option<&Term> {
        let mut cur = self;
        for &i in &pos.0 {
            cur = cur.args().get(i.checked_sub(1)?)?;
        }
        Some(cur)
    }

    pub fn replace_at(&self, pos: &Position, replacement: &Term) -> Option<Term> {
        self.replace_at_slice(&pos.0, replacement)
    }

    fn replace_at_slice(&self, path: &[usize], replacement: &Term) -> Option<Term> {
        match path.split_first() {
            None => Some(replacement.clone()),
            Some((&i, rest)) => match self {
                Term::Var(_) => None,
                Term::App(f, args) => {
                    let idx = i.checked_sub(1)?;
                    let new_arg = args.get(idx)?.replace_at_slice(rest, replacement)?;
                    let mut new_args = args.clone();
                    new_args[idx] = new_arg;
                    Some(Term::App(*f, new_args))
                }
            },
        }
    }

    /// All subterms in pre-order together with their positions.
    pub fn subterms_with_positions(&self) -> Vec<(Position, &Term)> {
        let mut out = Vec::new();
        self.walk(&mut Vec::new(), &mut out);
        out
    }

    fn walk<'a>(&'a self, path: &mut Vec<usize>, out: &mut Vec<(Position, &'a Term)>) {
        out.push((Position(path.clone()), self));
        for (i, a) in self.args().iter().enumerate() {
            path.push(i + 1);
            a.walk(path, out);
            path.pop();
        }
    }

    /// Pre-order iterator over all subterms, the root included.
    pub fn subterms(&self) -> Vec<&Term> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            out.push(t);
            stack.extend(t.args().iter().rev());
        }
        out
    }

    /// Positions at which `needle` occurs, in pre-order.
    pub fn positions_of(&self, needle: &Term) -> Vec<Position> {
        self.subterms_with_positions()
            .into_iter()
            .filter(|(_, t)| *t == needle)
            .map(|(p, _)| p)
            .collect()
    }

    /// Replaces every occurrence of `from` by `to`. Occurrences are found
    /// top-down, so an occurrence inside another occurrence is never visited.
    pub fn replace_all(&self, from: &Term, to: &Term) -> Term {
        if self == from {
            return to.clone();
        }
        match self {
            Term::Var(_) => self.clone(),
            Term::App(f, args) => Term::App(*f, args.iter().map(|a| a.replace_all(from, to)).collect()),
        }
    }

    pub fn apply(&self, subst: &Substitution) -> Term {
        subst.apply(self)
    }

    /// Renames every variable through `map`, allocating fresh ids from `next`.
    pub fn rename(&self, map: &mut HashMap<Var, Var>, next: &mut u32) -> Term {
        match self {
            Term::Var(v) => Term::Var(*map.entry(*v).or_insert_with(|| {
                let fresh = Var(*next);
                *next += 1;
                fresh
            })),
            Term::App(f, args) => Term::App(*f, args.iter().map(|a| a.rename(map, next)).collect()),
        }
    }

    pub fn symbols(&self, out: &mut Vec<(Symbol, usize)>) {
        if let Term::App(f, args) = self {
            if !out.contains(&(*f, args.len())) {
                out.push((*f, args.len()));
            }
            args.iter().for_each(|a| a.symbols(out));
        }
    }

    /// Renders the term with every variable replaced by `_`; invariant under renaming.
    pub fn shape(&self) -> String {
        let mut s = String::new();
        self.write_shape(&mut s);
        s
    }

    fn write_shape(&self, out: &mut String) {
        match self {
            Term::Var(_) => out.push('_'),
            Term::App(f, args) => {
                out.push_str(f.name());
                if !args.is_empty() {
                    out.push('(');
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            out.push(',');
                        }
                        a.write_shape(out);
                    }
                    out.push(')');
                }
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::App(s, args) => {
                write!(f, "{s}")?;
                if !args.is_empty() {
                    f.write_str("(")?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            f.write_str(",")?;
                        }
                        write!(f, "{a}")?;
                    }
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b() -> Term {
        Term::constant("b")
    }

    #[test]
    fn positions_and_replacement() {
        let t = Term::app("f", vec![Term::app("f", vec![b()]), b()]);
        assert_eq!(t.positions_of(&b()), vec![Position(vec![1, 1]), Position(vec![2])]);
        let r = t.replace_at(&Position(vec![1, 1]), &Term::constant("c")).unwrap();
        assert_eq!(r.to_string(), "f(f(c),b)");
        assert_eq!(t.subterm_at(&Position(vec![3])), None);
        assert_eq!(t.replace_all(&b(), &Term::constant("c")).to_string(), "f(f(c),c)");
    }

    #[test]
    fn symbol_order_is_by_name() {
        let z = Symbol::intern("zz_sym");
        let a = Symbol::intern("aa_sym");
        assert!(a < z);
        assert_eq!(Symbol::intern("aa_sym"), a);
    }

    #[test]
    fn proper_subterm() {
        let fb = Term::app("f", vec![b()]);
        assert!(b().is_proper_subterm_of(&fb));
        assert!(!fb.is_proper_subterm_of(&fb));
        assert_eq!(fb.size(), 2);
        assert_eq!(Term::var(0).depth(), 0);
        assert_eq!(Term::app("g", vec![fb.clone()]).depth(), 2);
    }
}
