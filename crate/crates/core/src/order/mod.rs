//! Reduction orderings on terms and their extensions to literals and clauses.

mod kbo;
mod lpo;
mod multiset;

pub use multiset::multiset_compare;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::clause::{Clause, Literal};
use crate::term::{Symbol, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Comparison {
    Greater,
    Less,
    Equal,
    Incomparable,
}

impl Comparison {
    pub fn reverse(self) -> Comparison {
        match self {
            Comparison::Greater => Comparison::Less,
            Comparison::Less => Comparison::Greater,
            c => c,
        }
    }

    pub fn is_greater(self) -> bool {
        self == Comparison::Greater
    }

    pub fn is_greater_or_equal(self) -> bool {
        matches!(self, Comparison::Greater | Comparison::Equal)
    }

    /// The `⋠` test of the inference side conditions: anything but Less or Equal.
    pub fn not_less_or_equal(self) -> bool {
        matches!(self, Comparison::Greater | Comparison::Incomparable)
    }

    /// Lexicographic combination: `self` unless it is Equal.
    pub fn then_with(self, f: impl FnOnce() -> Comparison) -> Comparison {
        if self == Comparison::Equal {
            f()
        } else {
            self
        }
    }
}

impl From<std::cmp::Ordering> for Comparison {
    fn from(o: std::cmp::Ordering) -> Comparison {
        match o {
            std::cmp::Ordering::Greater => Comparison::Greater,
            std::cmp::Ordering::Less => Comparison::Less,
            std::cmp::Ordering::Equal => Comparison::Equal,
        }
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Comparison::Greater => "Greater",
            Comparison::Less => "Less",
            Comparison::Equal => "Equal",
            Comparison::Incomparable => "Incomparable",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderingKind {
    Kbo,
    Lpo,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("variable weight must be positive")]
    ZeroVariableWeight,
    #[error("constant {symbol} has weight {weight}, below the variable weight {var_weight}")]
    LightConstant { symbol: String, weight: u64, var_weight: u64 },
    #[error("unary symbol {0} has weight 0 but is not the greatest symbol in the precedence")]
    ZeroWeightUnaryNotMaximal(String),
    #[error("more than one unary symbol has weight 0: {0} and {1}")]
    SeveralZeroWeightUnary(String, String),
    #[error("symbol {0} appears twice in the precedence")]
    DuplicatePrecedence(String),
}

/// Parameters of the term ordering.
///
/// The precedence lists symbols from greatest to least. Symbols not listed
/// rank below every listed one and are ordered among themselves by name,
/// so the precedence is always total.
#[derive(Clone, Debug)]
pub struct OrderingConfig {
    pub kind: OrderingKind,
    weights: HashMap<Symbol, u64>,
    pub var_weight: u64,
    pub default_weight: u64,
    precedence: Vec<Symbol>,
    rank: HashMap<Symbol, usize>,
}

impl Default for OrderingConfig {
    fn default() -> Self {
        OrderingConfig::kbo_uniform()
    }
}

impl OrderingConfig {
    /// KBO with every weight 1 and the default precedence.
    pub fn kbo_uniform() -> OrderingConfig {
        OrderingConfig {
            kind: OrderingKind::Kbo,
            weights: HashMap::new(),
            var_weight: 1,
            default_weight: 1,
            precedence: Vec::new(),
            rank: HashMap::new(),
        }
    }

    pub fn lpo(precedence: &[&str]) -> OrderingConfig {
        let mut cfg = OrderingConfig::kbo_uniform();
        cfg.kind = OrderingKind::Lpo;
        cfg.set_precedence(precedence.iter().map(|s| Symbol::intern(s)).collect())
            .expect("duplicate symbol in precedence");
        cfg
    }

    pub fn kbo(weights: &[(&str, u64)], var_weight: u64, precedence: &[&str]) -> OrderingConfig {
        let mut cfg = OrderingConfig::kbo_uniform();
        cfg.var_weight = var_weight;
        for (s, w) in weights {
            cfg.set_weight(Symbol::intern(s), *w);
        }
        cfg.set_precedence(precedence.iter().map(|s| Symbol::intern(s)).collect())
            .expect("duplicate symbol in precedence");
        cfg
    }

    pub fn set_weight(&mut self, f: Symbol, w: u64) {
        self.weights.insert(f, w);
    }

    pub fn set_precedence(&mut self, prec: Vec<Symbol>) -> Result<(), OrderError> {
        let mut rank = HashMap::new();
        for (i, f) in prec.iter().enumerate() {
            if rank.insert(*f, i).is_some() {
                return Err(OrderError::DuplicatePrecedence(f.name().to_owned()));
            }
        }
        self.precedence = prec;
        self.rank = rank;
        Ok(())
    }

    pub fn weight(&self, f: Symbol) -> u64 {
        self.weights.get(&f).copied().unwrap_or(self.default_weight)
    }

    pub fn explicit_weights(&self) -> impl Iterator<Item = (Symbol, u64)> + '_ {
        self.weights.iter().map(|(f, w)| (*f, *w))
    }

    pub fn precedence(&self) -> &[Symbol] {
        &self.precedence
    }

    pub fn prec_greater(&self, f: Symbol, g: Symbol) -> bool {
        match (self.rank.get(&f), self.rank.get(&g)) {
            (Some(a), Some(b)) => a < b,
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (None, None) => f.name() > g.name(),
        }
    }

    /// Checks KBO admissibility for the given signature.
    pub fn validate(&self, signature: &[(Symbol, usize)]) -> Result<(), OrderError> {
        if self.kind == OrderingKind::Lpo {
            return Ok(());
        }
        if self.var_weight == 0 {
            return Err(OrderError::ZeroVariableWeight);
        }
        let mut zero_unary: Option<Symbol> = None;
        for &(f, arity) in signature {
            let w = self.weight(f);
            if arity == 0 && w < self.var_weight {
                return Err(OrderError::LightConstant {
                    symbol: f.name().to_owned(),
                    weight: w,
                    var_weight: self.var_weight,
                });
            }
            if arity == 1 && w == 0 {
                if let Some(prev) = zero_unary {
                    if prev != f {
                        return Err(OrderError::SeveralZeroWeightUnary(
                            prev.name().to_owned(),
                            f.name().to_owned(),
                        ));
                    }
                }
                zero_unary = Some(f);
                if signature.iter().any(|&(g, _)| g != f && !self.prec_greater(f, g)) {
                    return Err(OrderError::ZeroWeightUnaryNotMaximal(f.name().to_owned()));
                }
            }
        }
        Ok(())
    }

    pub fn compare(&self, s: &Term, t: &Term) -> Comparison {
        match self.kind {
            OrderingKind::Kbo => kbo::compare(self, s, t),
            OrderingKind::Lpo => lpo::compare(self, s, t),
        }
    }

    pub fn greater(&self, s: &Term, t: &Term) -> bool {
        match self.kind {
            OrderingKind::Kbo => kbo::greater(self, s, t),
            OrderingKind::Lpo => lpo::greater(self, s, t),
        }
    }

    pub fn compare_literals(&self, a: &Literal, b: &Literal) -> Comparison {
        multiset_compare(&a.encoding(), &b.encoding(), |s, t| self.compare(s, t))
    }

    pub fn compare_clauses(&self, c: &Clause, d: &Clause) -> Comparison {
        multiset_compare(&c.lits, &d.lits, |a, b| self.compare_literals(a, b))
    }

    /// Whether literal `index` of `c` is maximal (no other literal greater)
    /// or strictly maximal (no other literal greater or equal).
    pub fn is_maximal(&self, c: &Clause, index: usize, strict: bool) -> bool {
        let l = &c.lits[index];
        c.lits.iter().enumerate().all(|(j, m)| {
            if j == index {
                return true;
            }
            match self.compare_literals(m, l) {
                Comparison::Greater => false,
                Comparison::Equal => !strict,
                _ => true,
            }
        })
    }

    /// Whether `t` is not below any other term of `c` (strict: not below or equal),
    /// counting all sides of all literals except the occurrence `(index, side)`.
    pub fn is_maximal_term(&self, c: &Clause, t: &Term, skip: Option<(usize, crate::clause::Side)>, strict: bool) -> bool {
        for (i, l) in c.lits.iter().enumerate() {
            for side in [crate::clause::Side::Lhs, crate::clause::Side::Rhs] {
                if skip == Some((i, side)) {
                    continue;
                }
                match self.compare(l.side(side), t) {
                    Comparison::Greater => return false,
                    Comparison::Equal if strict => return false,
                    _ => {}
                }
            }
        }
        true
    }
}
