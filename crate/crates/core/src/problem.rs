//! Problem files: ordering directives, clauses, and the lab extensions
//! (ground rewrite rules and closures).
//!
//! ```text
//! % comment
//! order kbo.            order lpo.
//! weight f 4.           varweight 1.
//! prec f > g > b.
//! cnf(name, axiom, f(X,d) = X | g(X) != d).
//! rule(f(b), b).
//! closure(c1, h(f(X)) = f(Y), {X -> b, Y -> b}).
//! variant horn.         variant nonhorn.
//! ```
//!
//! Identifiers starting with an uppercase letter are variables, local to the
//! statement they occur in.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::fmt::Write as _;

use thiserror::Error;

use crate::clause::{Clause, Literal};
use crate::order::{OrderingConfig, OrderingKind};
pub use crate::rewrite::Variant;
use crate::term::{Substitution, Symbol, Term, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {message}")]
pub struct Diagnostic {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct Diagnostics(pub Vec<Diagnostic>);

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedClause {
    pub name: String,
    pub role: String,
    pub clause: Clause,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedClosure {
    pub name: String,
    pub clause: Clause,
    pub theta: Substitution,
}

#[derive(Clone, Debug)]
pub struct ProblemFile {
    pub ordering: OrderingConfig,
    /// True when the file contains an `order` directive.
    pub explicit_order: bool,
    pub clauses: Vec<NamedClause>,
    pub rules: Vec<(Term, Term)>,
    pub closures: Vec<NamedClosure>,
    pub variant: Option<Variant>,
}

impl ProblemFile {
    pub fn input_clauses(&self) -> Vec<Clause> {
        self.clauses.iter().map(|c| c.clause.clone()).collect()
    }

    /// Renders the problem in the input syntax.
    pub fn print(&self) -> String {
        let mut out = String::new();
        if self.explicit_order {
            let kind = match self.ordering.kind {
                OrderingKind::Kbo => "kbo",
                OrderingKind::Lpo => "lpo",
            };
            let _ = writeln!(out, "order {kind}.");
        }
        if self.ordering.kind == OrderingKind::Kbo {
            let mut weights: Vec<(Symbol, u64)> = self.ordering.explicit_weights().collect();
            weights.sort();
            for (f, w) in weights {
                let _ = writeln!(out, "weight {f} {w}.");
            }
            if self.ordering.var_weight != 1 {
                let _ = writeln!(out, "varweight {}.", self.ordering.var_weight);
            }
        }
        if !self.ordering.precedence().is_empty() {
            let names: Vec<&str> = self.ordering.precedence().iter().map(|s| s.name()).collect();
            let _ = writeln!(out, "prec {}.", names.join(" > "));
        }
        if let Some(v) = self.variant {
            let _ = writeln!(out, "variant {}.", if v == Variant::Horn { "horn" } else { "nonhorn" });
        }
        for c in &self.clauses {
            let _ = writeln!(out, "cnf({}, {}, {}).", c.name, c.role, c.clause);
        }
        for (l, r) in &self.rules {
            let _ = writeln!(out, "rule({l}, {r}).");
        }
        for c in &self.closures {
            let binds: Vec<String> = c.theta.iter().map(|(v, t)| format!("{v} -> {t}")).collect();
            let _ = writeln!(out, "closure({}, {}, {{{}}}).", c.name, c.clause, binds.join(", "));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(u64),
    False,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Dot,
    Pipe,
    Eq,
    Neq,
    Gt,
    Arrow,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Num(n) => write!(f, "'{n}'"),
            Tok::False => f.write_str("'$false'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::LBrace => f.write_str("'{'"),
            Tok::RBrace => f.write_str("'}'"),
            Tok::Comma => f.write_str("','"),
            Tok::Dot => f.write_str("'.'"),
            Tok::Pipe => f.write_str("'|'"),
            Tok::Eq => f.write_str("'='"),
            Tok::Neq => f.write_str("'!='"),
            Tok::Gt => f.write_str("'>'"),
            Tok::Arrow => f.write_str("'->'"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn lex(text: &str, diags: &mut Vec<Diagnostic>) -> Vec<Spanned> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (sl, sc) = (line, col);
        let mut push = |tok: Tok, len: usize, i: &mut usize, col: &mut usize| {
            out.push(Spanned { tok, line: sl, col: sc });
            *i += len;
            *col += len;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
            }
            '%' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '(' => push(Tok::LParen, 1, &mut i, &mut col),
            ')' => push(Tok::RParen, 1, &mut i, &mut col),
            '{' => push(Tok::LBrace, 1, &mut i, &mut col),
            '}' => push(Tok::RBrace, 1, &mut i, &mut col),
            ',' => push(Tok::Comma, 1, &mut i, &mut col),
            '.' => push(Tok::Dot, 1, &mut i, &mut col),
            '|' => push(Tok::Pipe, 1, &mut i, &mut col),
            '=' => push(Tok::Eq, 1, &mut i, &mut col),
            '>' => push(Tok::Gt, 1, &mut i, &mut col),
            '!' if chars.get(i + 1) == Some(&'=') => push(Tok::Neq, 2, &mut i, &mut col),
            '-' if chars.get(i + 1) == Some(&'>') => push(Tok::Arrow, 2, &mut i, &mut col),
            '$' => {
                let start = i;
                let mut j = i + 1;
                while j < chars.len() && is_ident_char(chars[j]) {
                    j += 1;
                }
                let word: String = chars[start..j].iter().collect();
                if word == "$false" {
                    push(Tok::False, j - start, &mut i, &mut col);
                } else {
                    diags.push(Diagnostic { line: sl, col: sc, message: format!("unknown token '{word}'") });
                    col += j - i;
                    i = j;
                }
            }
            c if c.is_ascii_digit() => {
                let start = i;
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let word: String = chars[start..j].iter().collect();
                match word.parse::<u64>() {
                    Ok(n) => push(Tok::Num(n), j - start, &mut i, &mut col),
                    Err(_) => {
                        diags.push(Diagnostic { line: sl, col: sc, message: format!("number out of range '{word}'") });
                        col += j - i;
                        i = j;
                    }
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                let mut j = i;
                while j < chars.len() && is_ident_char(chars[j]) {
                    j += 1;
                }
                let word: String = chars[start..j].iter().collect();
                push(Tok::Ident(word), j - start, &mut i, &mut col);
            }
            other => {
                diags.push(Diagnostic { line: sl, col: sc, message: format!("unexpected character '{other}'") });
                i += 1;
                col += 1;
            }
        }
    }
    out.push(Spanned { tok: Tok::Eof, line, col });
    out
}

fn is_var_name(s: &str) -> bool {
    s.starts_with(|c: char| c.is_ascii_uppercase())
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    arities: HashMap<Symbol, usize>,
    vars: HashMap<String, Var>,
}

type PResult<T> = Result<T, Diagnostic>;

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_at(&self, sp: &Spanned, message: String) -> Diagnostic {
        Diagnostic { line: sp.line, col: sp.col, message }
    }

    fn expect(&mut self, tok: Tok) -> PResult<()> {
        let sp = self.next();
        if sp.tok == tok {
            Ok(())
        } else {
            Err(self.error_at(&sp, format!("expected {tok}, found {}", sp.tok)))
        }
    }

    fn ident(&mut self) -> PResult<(String, Spanned)> {
        let sp = self.next();
        match &sp.tok {
            Tok::Ident(s) => Ok((s.clone(), sp.clone())),
            other => Err(self.error_at(&sp, format!("expected identifier, found {other}"))),
        }
    }

    fn number(&mut self) -> PResult<u64> {
        let sp = self.next();
        match sp.tok {
            Tok::Num(n) => Ok(n),
            ref other => Err(self.error_at(&sp, format!("expected number, found {other}"))),
        }
    }

    fn symbol(&mut self, name: &str, arity: usize, sp: &Spanned) -> PResult<Symbol> {
        let f = Symbol::intern(name);
        match self.arities.get(&f) {
            Some(&a) if a != arity => Err(self.error_at(
                sp,
                format!("arity conflict: {name} used with {arity} arguments, earlier with {a}"),
            )),
            _ => {
                self.arities.insert(f, arity);
                Ok(f)
            }
        }
    }

    fn variable(&mut self, name: &str) -> Var {
        let next = self.vars.len() as u32;
        *self.vars.entry(name.to_owned()).or_insert(Var(next))
    }

    fn term(&mut self) -> PResult<Term> {
        let (name, sp) = self.ident()?;
        if is_var_name(&name) {
            if self.peek().tok == Tok::LParen {
                return Err(self.error_at(&sp, format!("variable {name} cannot take arguments")));
            }
            return Ok(Term::Var(self.variable(&name)));
        }
        let mut args = Vec::new();
        if self.peek().tok == Tok::LParen {
            self.next();
            loop {
                args.push(self.term()?);
                let sp = self.next();
                match sp.tok {
                    Tok::Comma => continue,
                    Tok::RParen => break,
                    ref other => {
                        return Err(self.error_at(&sp, format!("expected ',' or ')', found {other}")))
                    }
                }
            }
        }
        let f = self.symbol(&name, args.len(), &sp)?;
        Ok(Term::App(f, args))
    }

    fn literal(&mut self) -> PResult<Literal> {
        let lhs = self.term()?;
        let sp = self.next();
        let positive = match sp.tok {
            Tok::Eq => true,
            Tok::Neq => false,
            ref other => return Err(self.error_at(&sp, format!("expected '=' or '!=', found {other}"))),
        };
        let rhs = self.term()?;
        Ok(Literal { lhs, rhs, positive })
    }

    fn clause(&mut self) -> PResult<Clause> {
        if self.peek().tok == Tok::False {
            self.next();
            return Ok(Clause::empty());
        }
        let grouped = self.peek().tok == Tok::LParen;
        if grouped {
            self.next();
        }
        let mut lits = vec![self.literal()?];
        while self.peek().tok == Tok::Pipe {
            self.next();
            lits.push(self.literal()?);
        }
        if grouped {
            self.expect(Tok::RParen)?;
        }
        Ok(Clause::new(lits))
    }

    fn skip_statement(&mut self) {
        loop {
            let sp = self.next();
            if matches!(sp.tok, Tok::Dot | Tok::Eof) {
                return;
            }
        }
    }
}

struct Builder {
    kind: Option<(OrderingKind, Spanned)>,
    weights: Vec<(Symbol, u64)>,
    var_weight: Option<u64>,
    precedence: Vec<(Symbol, Spanned)>,
    clauses: Vec<NamedClause>,
    names: HashSet<String>,
    rules: Vec<(Term, Term)>,
    closures: Vec<NamedClosure>,
    variant: Option<Variant>,
}

fn statement(p: &mut Parser, b: &mut Builder) -> PResult<()> {
    p.vars.clear();
    let (head, hsp) = p.ident()?;
    match head.as_str() {
        "order" => {
            let (k, sp) = p.ident()?;
            let kind = match k.as_str() {
                "kbo" => OrderingKind::Kbo,
                "lpo" => OrderingKind::Lpo,
                _ => return Err(p.error_at(&sp, format!("unknown ordering '{k}', expected kbo or lpo"))),
            };
            b.kind = Some((kind, hsp));
        }
        "weight" => {
            let (f, sp) = p.ident()?;
            if is_var_name(&f) {
                return Err(p.error_at(&sp, format!("cannot give a weight to variable {f}")));
            }
            let w = p.number()?;
            b.weights.push((Symbol::intern(&f), w));
        }
        "varweight" => b.var_weight = Some(p.number()?),
        "prec" => {
            let (f, sp) = p.ident()?;
            b.precedence.push((Symbol::intern(&f), sp));
            while p.peek().tok == Tok::Gt {
                p.next();
                let (g, sp) = p.ident()?;
                b.precedence.push((Symbol::intern(&g), sp));
            }
        }
        "variant" => {
            let (v, sp) = p.ident()?;
            b.variant = Some(match v.as_str() {
                "horn" => Variant::Horn,
                "nonhorn" => Variant::NonHorn,
                _ => return Err(p.error_at(&sp, format!("unknown variant '{v}', expected horn or nonhorn"))),
            });
        }
        "cnf" => {
            p.expect(Tok::LParen)?;
            let (name, nsp) = p.ident()?;
            p.expect(Tok::Comma)?;
            let (role, _) = p.ident()?;
            p.expect(Tok::Comma)?;
            let clause = p.clause()?;
            p.expect(Tok::RParen)?;
            if !b.names.insert(name.clone()) {
                return Err(p.error_at(&nsp, format!("duplicate clause name '{name}'")));
            }
            b.clauses.push(NamedClause { name, role, clause });
        }
        "rule" => {
            p.expect(Tok::LParen)?;
            let sp = p.peek().clone();
            let l = p.term()?;
            p.expect(Tok::Comma)?;
            let r = p.term()?;
            p.expect(Tok::RParen)?;
            if !l.is_ground() || !r.is_ground() {
                return Err(p.error_at(&sp, "rewrite rules must be ground".into()));
            }
            b.rules.push((l, r));
        }
        "closure" => {
            p.expect(Tok::LParen)?;
            let (name, nsp) = p.ident()?;
            p.expect(Tok::Comma)?;
            let clause = p.clause()?;
            p.expect(Tok::Comma)?;
            p.expect(Tok::LBrace)?;
            let mut theta = Substitution::new();
            if p.peek().tok != Tok::RBrace {
                loop {
                    let (v, vsp) = p.ident()?;
                    if !is_var_name(&v) {
                        return Err(p.error_at(&vsp, format!("expected a variable, found '{v}'")));
                    }
                    let var = p.variable(&v);
                    p.expect(Tok::Arrow)?;
                    let tsp = p.peek().clone();
                    let t = p.term()?;
                    if !t.is_ground() {
                        return Err(p.error_at(&tsp, "closure substitutions must be ground".into()));
                    }
                    theta.insert(var, t);
                    if p.peek().tok == Tok::Comma {
                        p.next();
                    } else {
                        break;
                    }
                }
            }
            p.expect(Tok::RBrace)?;
            p.expect(Tok::RParen)?;
            if !theta.is_ground_on(clause.vars()) {
                return Err(p.error_at(&nsp, format!("closure '{name}' does not ground every variable")));
            }
            if !b.names.insert(name.clone()) {
                return Err(p.error_at(&nsp, format!("duplicate clause name '{name}'")));
            }
            let theta = theta.restrict(clause.vars());
            b.closures.push(NamedClosure { name, clause, theta });
        }
        other => return Err(p.error_at(&hsp, format!("unknown statement '{other}'"))),
    }
    p.expect(Tok::Dot)
}

/// Parses a problem file, reporting every diagnostic found.
pub fn parse(text: &str) -> Result<ProblemFile, Diagnostics> {
    let mut diags = Vec::new();
    let toks = lex(text, &mut diags);
    let mut p = Parser { toks, pos: 0, arities: HashMap::new(), vars: HashMap::new() };
    let mut b = Builder {
        kind: None,
        weights: Vec::new(),
        var_weight: None,
        precedence: Vec::new(),
        clauses: Vec::new(),
        names: HashSet::new(),
        rules: Vec::new(),
        closures: Vec::new(),
        variant: None,
    };
    while p.peek().tok != Tok::Eof {
        if let Err(d) = statement(&mut p, &mut b) {
            diags.push(d);
            p.skip_statement();
        }
    }

    let mut cfg = OrderingConfig::kbo_uniform();
    if let Some((kind, _)) = &b.kind {
        cfg.kind = *kind;
    }
    if let Some(w) = b.var_weight {
        cfg.var_weight = w;
    }
    for (f, w) in &b.weights {
        cfg.set_weight(*f, *w);
    }
    let mut seen = HashSet::new();
    for (f, sp) in &b.precedence {
        if !seen.insert(*f) {
            diags.push(Diagnostic { line: sp.line, col: sp.col, message: format!("symbol {f} appears twice in the precedence") });
        }
    }
    let _ = cfg.set_precedence(b.precedence.iter().map(|(f, _)| *f).filter({
        let mut once = HashSet::new();
        move |f| once.insert(*f)
    }).collect());

    let mut signature: Vec<(Symbol, usize)> = p.arities.iter().map(|(f, a)| (*f, *a)).collect();
    signature.sort();
    if let Some((kind, sp)) = &b.kind {
        let weighted: HashSet<Symbol> = b.weights.iter().map(|(f, _)| *f).collect();
        let ranked: HashSet<Symbol> = b.precedence.iter().map(|(f, _)| *f).collect();
        for (f, _) in &signature {
            let missing = match kind {
                OrderingKind::Kbo => !weighted.contains(f),
                OrderingKind::Lpo => !ranked.contains(f),
            };
            if missing {
                let what = if *kind == OrderingKind::Kbo { "weight" } else { "precedence entry" };
                diags.push(Diagnostic { line: sp.line, col: sp.col, message: format!("symbol {f} has no {what}") });
            }
        }
    }
    if let Err(e) = cfg.validate(&signature) {
        let (line, col) = b.kind.as_ref().map_or((1, 1), |(_, sp)| (sp.line, sp.col));
        diags.push(Diagnostic { line, col, message: e.to_string() });
    }

    if !diags.is_empty() {
        return Err(Diagnostics(diags));
    }
    Ok(ProblemFile {
        ordering: cfg,
        explicit_order: b.kind.is_some(),
        clauses: b.clauses,
        rules: b.rules,
        closures: b.closures,
        variant: b.variant,
    })
}

fn standalone<T>(text: &str, f: impl FnOnce(&mut Parser) -> PResult<T>) -> Result<T, Diagnostics> {
    let mut diags = Vec::new();
    let toks = lex(text, &mut diags);
    if !diags.is_empty() {
        return Err(Diagnostics(diags));
    }
    let mut p = Parser { toks, pos: 0, arities: HashMap::new(), vars: HashMap::new() };
    let v = f(&mut p).map_err(|d| Diagnostics(vec![d]))?;
    if p.peek().tok != Tok::Eof {
        let sp = p.peek().clone();
        return Err(Diagnostics(vec![p.error_at(&sp, format!("unexpected {}", sp.tok))]));
    }
    Ok(v)
}

/// Parses a single clause such as `f(X,d) = X | g(X) != d`. Variables are
/// numbered from 0 in order of first occurrence.
pub fn parse_clause(text: &str) -> Result<Clause, Diagnostics> {
    standalone(text, |p| p.clause())
}

pub fn parse_term(text: &str) -> Result<Term, Diagnostics> {
    standalone(text, |p| p.term())
}

/// Parses a clause together with a grounding substitution written against
/// the same variable names, e.g. `("h(f(X)) = f(Y)", "X -> b, Y -> b")`.
pub fn parse_closure(clause: &str, theta: &str) -> Result<(Clause, Substitution), Diagnostics> {
    let text = format!("{clause} {{{theta}}}");
    standalone(&text, |p| {
        let c = p.clause()?;
        p.expect(Tok::LBrace)?;
        let mut s = Substitution::new();
        while p.peek().tok != Tok::RBrace {
            let (v, _) = p.ident()?;
            let var = p.variable(&v);
            p.expect(Tok::Arrow)?;
            let t = p.term()?;
            s.insert(var, t);
            if p.peek().tok == Tok::Comma {
                p.next();
            }
        }
        p.expect(Tok::RBrace)?;
        Ok((c, s))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = "\
order kbo.
weight f 4. weight g 3. weight b 4. weight b' 2.
weight c 1. weight c' 1. weight d 1.
varweight 1.
cnf(c1, axiom, f(X,d) = X).
cnf(c2, axiom, f(X,Y) != b | g(X) = d).
cnf(c3, axiom, b' = c' | b = c).
cnf(c4, axiom, g(b') != g(c')).
cnf(c5, axiom, g(c) != d).
";

    #[test]
    fn parses_example_problem() {
        let p = parse(EXAMPLE).unwrap();
        assert_eq!(p.clauses.len(), 5);
        assert_eq!(p.clauses[1].clause.to_string(), "f(X0,X1) != b | g(X0) = d");
        assert_eq!(p.ordering.weight(Symbol::intern("b'")), 2);
        assert!(p.explicit_order);
    }

    #[test]
    fn empty_file_is_valid() {
        let p = parse("").unwrap();
        assert!(p.clauses.is_empty());
        assert!(!p.explicit_order);
    }

    #[test]
    fn trailing_pipe_is_reported_at_the_dot() {
        let err = parse("cnf(c, axiom, f(X) = X | .").unwrap_err();
        assert_eq!(err.0.len(), 1);
        assert_eq!((err.0[0].line, err.0[0].col), (1, 26));
    }

    #[test]
    fn all_errors_are_reported() {
        let text = "cnf(a, axiom, f(b) = c).\ncnf(a, axiom, f(b,b) = c).\ncnf(b, axiom, c = ).\n";
        let err = parse(text).unwrap_err();
        assert_eq!(err.0.len(), 2);
        assert!(err.0[0].message.contains("arity conflict"));
        assert_eq!(err.0[1].line, 3);
    }

    #[test]
    fn duplicate_names_and_missing_weights() {
        let err = parse("cnf(a, axiom, b = c).\ncnf(a, axiom, c = b).").unwrap_err();
        assert!(err.0[0].message.contains("duplicate"));
        let err = parse("order kbo.\nweight b 1.\ncnf(a, axiom, b = c).").unwrap_err();
        assert!(err.0[0].message.contains("symbol c has no weight"));
    }

    #[test]
    fn round_trip() {
        let p = parse(EXAMPLE).unwrap();
        let q = parse(&p.print()).unwrap();
        assert_eq!(p.clauses, q.clauses);
        assert_eq!(p.print(), q.print());
    }

    #[test]
    fn lab_statements() {
        let text = "variant horn.\nrule(f(b), b).\nclosure(k, h(f(X)) = f(Y), {X -> b, Y -> b}).\n";
        let p = parse(text).unwrap();
        assert_eq!(p.rules.len(), 1);
        assert_eq!(p.closures[0].theta.len(), 2);
        assert_eq!(p.variant, Some(Variant::Horn));
        let q = parse(&p.print()).unwrap();
        assert_eq!(p.closures, q.closures);
    }
}
