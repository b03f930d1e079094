use std::collections::BTreeMap;
use std::fmt;

use super::{Term, Var};

/// A finite map from variables to terms. Application is a single
/// simultaneous replacement; substitutions built by unification are
/// idempotent, so one pass is enough.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Substitution {
    map: BTreeMap<Var, Term>,
}

impl Substitution {
    pub fn new() -> Substitution {
        Substitution::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (Var, Term)>>(pairs: I) -> Substitution {
        let mut s = Substitution::new();
        for (v, t) in pairs {
            s.insert(v, t);
        }
        s
    }

    /// Binds `v` to `t`; a trivial binding `v ↦ v` is dropped.
    pub fn insert(&mut self, v: Var, t: Term) {
        if t == Term::Var(v) {
            self.map.remove(&v);
        } else {
            self.map.insert(v, t);
        }
    }

    pub fn get(&self, v: Var) -> Option<&Term> {
        self.map.get(&v)
    }

    pub fn remove(&mut self, v: Var) -> Option<Term> {
        self.map.remove(&v)
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, &Term)> {
        self.map.iter()
    }

    pub fn domain(&self) -> impl Iterator<Item = Var> + '_ {
        self.map.keys().copied()
    }

    pub fn apply(&self, t: &Term) -> Term {
        if self.map.is_empty() {
            return t.clone();
        }
        match t {
            Term::Var(v) => self.map.get(v).cloned().unwrap_or_else(|| t.clone()),
            Term::App(f, args) => Term::App(*f, args.iter().map(|a| self.apply(a)).collect()),
        }
    }

    /// The substitution that first applies `self` and then `other`,
    /// i.e. `x ↦ (x self) other`.
    pub fn then(&self, other: &Substitution) -> Substitution {
        let mut out = Substitution::new();
        for (v, t) in &self.map {
            out.insert(*v, other.apply(t));
        }
        for (v, t) in &other.map {
            if !self.map.contains_key(v) {
                out.insert(*v, t.clone());
            }
        }
        out
    }

    pub fn is_idempotent(&self) -> bool {
        self.then(self) == *self
    }

    /// Restriction to the given variables.
    pub fn restrict<I: IntoIterator<Item = Var>>(&self, vars: I) -> Substitution {
        let mut out = Substitution::new();
        for v in vars {
            if let Some(t) = self.map.get(&v) {
                out.insert(v, t.clone());
            }
        }
        out
    }

    pub fn is_ground_on<I: IntoIterator<Item = Var>>(&self, vars: I) -> bool {
        vars.into_iter()
            .all(|v| self.map.get(&v).is_some_and(Term::is_ground))
    }

    /// Two substitutions agree if they coincide on `vars`.
    pub fn agrees_with<I: IntoIterator<Item = Var>>(&self, other: &Substitution, vars: I) -> bool {
        vars.into_iter()
            .all(|v| self.apply(&Term::Var(v)) == other.apply(&Term::Var(v)))
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (v, t)) in self.map.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v} -> {t}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn apply_examples() {
        let x = Var(0);
        let s = Substitution::from_pairs([(x, Term::constant("b"))]);
        let t = Term::app("h", vec![Term::app("g", vec![Term::app("g", vec![Term::Var(x)])])]);
        assert_eq!(s.apply(&t).to_string(), "h(g(g(b)))");
        assert_eq!(Substitution::new().apply(&t), t);
    }

    #[test]
    fn composition_order() {
        let s = Substitution::from_pairs([(Var(0), Term::var(1))]);
        let t = Substitution::from_pairs([(Var(1), Term::constant("c"))]);
        let st = s.then(&t);
        assert_eq!(st.apply(&Term::var(0)).to_string(), "c");
        assert_eq!(st.apply(&Term::var(1)).to_string(), "c");
    }
}
