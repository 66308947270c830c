//! Terms, rewrite rules and rewrite systems in the old TPDB text format.
//!
//! ```text
//! (VAR x y)
//! (RULES
//!   f(g(x)) -> g(g(f(x)))   ; comments run to end of line
//! )
//! ```
//!
//! Identifiers not declared in `VAR` are function symbols; used bare they
//! are constants.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::poly::Var;

/// 1-based line and column in the source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

fn at(pos: &Option<Pos>) -> String {
    pos.map(|p| format!(" at {p}")).unwrap_or_default()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TrsError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: Pos, msg: String },
    #[error("symbol `{symbol}` used with {found} arguments but has arity {expected}{}", at(.pos))]
    Arity {
        symbol: String,
        expected: usize,
        found: usize,
        pos: Option<Pos>,
    },
    #[error("rule {rule}: variable `{var}` occurs on the right but not on the left{}", at(.pos))]
    UnboundRhsVariable {
        rule: usize,
        var: String,
        pos: Option<Pos>,
    },
    #[error("rule {rule}: left-hand side is a variable{}", at(.pos))]
    VariableLhs { rule: usize, pos: Option<Pos> },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FunSym {
    pub name: Arc<str>,
    pub arity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(Var),
    App(Arc<str>, Vec<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(Arc::from(name))
    }

    pub fn app(f: &str, args: Vec<Term>) -> Term {
        Term::App(Arc::from(f), args)
    }

    pub fn constant(c: &str) -> Term {
        Term::app(c, Vec::new())
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    /// Symbols with their arities, in order of first occurrence (pre-order).
    pub fn symbols(&self, out: &mut Vec<FunSym>) {
        if let Term::App(f, args) = self {
            if !out.iter().any(|s| s.name == *f) {
                out.push(FunSym { name: f.clone(), arity: args.len() });
            }
            for a in args {
                a.symbols(out);
            }
        }
    }

    fn collect_vars(&self, out: &mut Vec<Var>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    /// Depth-first (call nesting) size, used for display heuristics only.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }
}

/// Variables of `t` in left-to-right order of first occurrence.
pub fn term_vars(t: &Term) -> Vec<Var> {
    let mut out = Vec::new();
    t.collect_vars(&mut out);
    out
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::App(s, args) if args.is_empty() => write!(f, "{s}"),
            Term::App(s, args) => {
                write!(f, "{s}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rule {
    pub lhs: Term,
    pub rhs: Term,
}

impl Rule {
    pub fn new(lhs: Term, rhs: Term) -> Rule {
        Rule { lhs, rhs }
    }

    /// Variables of the rule, in order of first occurrence in the left side.
    pub fn vars(&self) -> Vec<Var> {
        term_vars(&self.lhs)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.lhs, self.rhs)
    }
}

/// A rewrite system: an ordered rule list and the signature it uses.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Trs {
    signature: Vec<FunSym>,
    rules: Vec<Rule>,
}

impl Trs {
    /// Validates the rules and collects the signature in order of first appearance.
    pub fn new(rules: Vec<Rule>) -> Result<Trs, TrsError> {
        let mut arity: BTreeMap<Arc<str>, usize> = BTreeMap::new();
        let mut signature = Vec::new();
        for (i, r) in rules.iter().enumerate() {
            if r.lhs.is_var() {
                return Err(TrsError::VariableLhs { rule: i + 1, pos: None });
            }
            let lhs_vars = term_vars(&r.lhs);
            if let Some(v) = term_vars(&r.rhs).into_iter().find(|v| !lhs_vars.contains(v)) {
                return Err(TrsError::UnboundRhsVariable { rule: i + 1, var: v.to_string(), pos: None });
            }
            let mut syms = Vec::new();
            r.lhs.symbols(&mut syms);
            r.rhs.symbols(&mut syms);
            check_arities(&r.lhs, &mut arity)?;
            check_arities(&r.rhs, &mut arity)?;
            for s in syms {
                if !signature.iter().any(|t: &FunSym| t.name == s.name) {
                    signature.push(s);
                }
            }
        }
        Ok(Trs { signature, rules })
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn signature(&self) -> &[FunSym] {
        &self.signature
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn arity(&self, symbol: &str) -> Option<usize> {
        self.signature.iter().find(|s| &*s.name == symbol).map(|s| s.arity)
    }

    /// The rules whose 0-based indices are not in `removed`, in original order.
    pub fn without(&self, removed: &BTreeSet<usize>) -> Trs {
        let kept = self
            .rules
            .iter()
            .enumerate()
            .filter(|(i, _)| !removed.contains(i))
            .map(|(_, r)| r.clone())
            .collect();
        Trs::new(kept).expect("a subset of a valid system is valid")
    }

    /// Appends the rules of `other`.
    pub fn union(&self, other: &Trs) -> Result<Trs, TrsError> {
        let mut rules = self.rules.clone();
        rules.extend(other.rules.iter().cloned());
        Trs::new(rules)
    }

    /// Variables of all rules in order of first occurrence.
    pub fn variables(&self) -> Vec<Var> {
        let mut out = Vec::new();
        for r in &self.rules {
            r.lhs.collect_vars(&mut out);
        }
        out
    }
}

fn check_arities(t: &Term, arity: &mut BTreeMap<Arc<str>, usize>) -> Result<(), TrsError> {
    if let Term::App(f, args) = t {
        match arity.get(f) {
            Some(&n) if n != args.len() => {
                return Err(TrsError::Arity {
                    symbol: f.to_string(),
                    expected: n,
                    found: args.len(),
                    pos: None,
                })
            }
            Some(_) => {}
            None => {
                arity.insert(f.clone(), args.len());
            }
        }
        for a in args {
            check_arities(a, arity)?;
        }
    }
    Ok(())
}

/// Prints `trs` so that [`parse_trs`] reads it back to an equal value.
pub fn format_trs(trs: &Trs) -> String {
    let mut out = String::new();
    let vars = trs.variables();
    if !vars.is_empty() {
        let names: Vec<&str> = vars.iter().map(|v| &**v).collect();
        out.push_str(&format!("(VAR {})\n", names.join(" ")));
    }
    if trs.rules.is_empty() {
        out.push_str("(RULES )");
    } else {
        out.push_str("(RULES\n");
        for r in &trs.rules {
            out.push_str(&format!("  {r}\n"));
        }
        out.push(')');
    }
    out
}

impl fmt::Display for Trs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_trs(self))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    Comma,
    Arrow,
    Ident(String),
}

fn tokenize(text: &str) -> Result<Vec<(Tok, Pos)>, TrsError> {
    let mut toks = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1, 1);
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        let mut advance = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().expect("peeked");
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        };
        match c {
            c if c.is_whitespace() => advance(&mut chars),
            ';' => {
                while chars.peek().is_some_and(|&c| c != '\n') {
                    advance(&mut chars);
                }
            }
            '(' => {
                advance(&mut chars);
                toks.push((Tok::Open, pos));
            }
            ')' => {
                advance(&mut chars);
                toks.push((Tok::Close, pos));
            }
            ',' => {
                advance(&mut chars);
                toks.push((Tok::Comma, pos));
            }
            '-' => {
                advance(&mut chars);
                if chars.peek() == Some(&'>') {
                    advance(&mut chars);
                    toks.push((Tok::Arrow, pos));
                } else {
                    return Err(TrsError::Syntax { pos, msg: "expected `->`".into() });
                }
            }
            c if is_ident_char(c) => {
                let mut name = String::new();
                while let Some(&c) = chars.peek() {
                    if !is_ident_char(c) {
                        break;
                    }
                    name.push(c);
                    advance(&mut chars);
                }
                toks.push((Tok::Ident(name), pos));
            }
            c => return Err(TrsError::Syntax { pos, msg: format!("unexpected character `{c}`") }),
        }
    }
    Ok(toks)
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    i: usize,
    end: Pos,
    vars: BTreeSet<String>,
    arity: BTreeMap<String, usize>,
}

impl Parser {
    fn pos(&self) -> Pos {
        self.toks.get(self.i).map_or(self.end, |t| t.1)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.0)
    }

    fn err<T>(&self, msg: &str) -> Result<T, TrsError> {
        Err(TrsError::Syntax { pos: self.pos(), msg: msg.to_string() })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Pos, TrsError> {
        if self.peek() == Some(&tok) {
            self.i += 1;
            Ok(self.toks[self.i - 1].1)
        } else {
            self.err(&format!("expected {what}"))
        }
    }

    fn keyword(&mut self, kw: &str) -> bool {
        if let (Some(Tok::Open), Some((Tok::Ident(name), _))) = (self.peek(), self.toks.get(self.i + 1)) {
            if name == kw {
                self.i += 2;
                return true;
            }
        }
        false
    }

    fn ident(&mut self) -> Result<(String, Pos), TrsError> {
        match self.toks.get(self.i) {
            Some((Tok::Ident(s), p)) => {
                let out = (s.clone(), *p);
                self.i += 1;
                Ok(out)
            }
            _ => self.err("expected an identifier"),
        }
    }

    fn term(&mut self, occurrences: &mut Vec<(Var, Pos)>) -> Result<Term, TrsError> {
        let (name, pos) = self.ident()?;
        if self.peek() == Some(&Tok::Open) {
            if self.vars.contains(&name) {
                return Err(TrsError::Syntax {
                    pos,
                    msg: format!("variable `{name}` applied to arguments"),
                });
            }
            self.i += 1;
            let mut args = vec![self.term(occurrences)?];
            while self.peek() == Some(&Tok::Comma) {
                self.i += 1;
                args.push(self.term(occurrences)?);
            }
            self.expect(Tok::Close, "`,` or `)`")?;
            self.check_arity(&name, args.len(), pos)?;
            Ok(Term::App(Arc::from(name.as_str()), args))
        } else if self.vars.contains(&name) {
            let v: Var = Arc::from(name.as_str());
            occurrences.push((v.clone(), pos));
            Ok(Term::Var(v))
        } else {
            self.check_arity(&name, 0, pos)?;
            Ok(Term::App(Arc::from(name.as_str()), Vec::new()))
        }
    }

    fn check_arity(&mut self, name: &str, n: usize, pos: Pos) -> Result<(), TrsError> {
        match self.arity.get(name) {
            Some(&m) if m != n => Err(TrsError::Arity {
                symbol: name.to_string(),
                expected: m,
                found: n,
                pos: Some(pos),
            }),
            _ => {
                self.arity.insert(name.to_string(), n);
                Ok(())
            }
        }
    }
}

/// Parses a rewrite system in the `(VAR ...) (RULES ...)` format.
pub fn parse_trs(text: &str) -> Result<Trs, TrsError> {
    let toks = tokenize(text)?;
    let lines: Vec<&str> = text.split('\n').collect();
    let end = Pos {
        line: lines.len(),
        col: lines.last().map_or(0, |l| l.chars().count()) + 1,
    };
    let mut p = Parser { toks, i: 0, end, vars: BTreeSet::new(), arity: BTreeMap::new() };

    if p.keyword("VAR") {
        while let Some(Tok::Ident(_)) = p.peek() {
            let (v, _) = p.ident()?;
            p.vars.insert(v);
        }
        p.expect(Tok::Close, "`)` closing VAR")?;
    }
    if !p.keyword("RULES") {
        return p.err("expected `(RULES`");
    }
    let mut rules = Vec::new();
    while p.peek() != Some(&Tok::Close) {
        if p.peek().is_none() {
            return p.err("unterminated RULES section");
        }
        let lhs_pos = p.pos();
        let mut lhs_vars = Vec::new();
        let lhs = p.term(&mut lhs_vars)?;
        p.expect(Tok::Arrow, "`->`")?;
        let mut rhs_vars = Vec::new();
        let rhs = p.term(&mut rhs_vars)?;
        let n = rules.len() + 1;
        if lhs.is_var() {
            return Err(TrsError::VariableLhs { rule: n, pos: Some(lhs_pos) });
        }
        if let Some((v, pos)) = rhs_vars.iter().find(|(v, _)| !lhs_vars.iter().any(|(w, _)| w == v)) {
            return Err(TrsError::UnboundRhsVariable { rule: n, var: v.to_string(), pos: Some(*pos) });
        }
        rules.push(Rule::new(lhs, rhs));
    }
    p.i += 1;
    if p.peek().is_some() {
        return p.err("unexpected input after RULES section");
    }
    Trs::new(rules)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_single_rule() {
        let t = parse_trs("(VAR x) (RULES f(g(x)) -> g(g(f(x))))").unwrap();
        assert_eq!(t.len(), 1);
        let sig: Vec<(String, usize)> = t.signature().iter().map(|s| (s.name.to_string(), s.arity)).collect();
        assert_eq!(sig, vec![("f".into(), 1), ("g".into(), 1)]);
    }

    #[test]
    fn undeclared_identifiers_are_constants() {
        let t = parse_trs("(VAR x) (RULES f(x) -> g(y))").unwrap();
        assert_eq!(t.rules()[0].rhs, Term::app("g", vec![Term::constant("y")]));
    }

    #[test]
    fn rejects_unbound_rhs_variable() {
        let err = parse_trs("(VAR x y) (RULES f(x) -> g(y))").unwrap_err();
        assert_eq!(
            err,
            TrsError::UnboundRhsVariable { rule: 1, var: "y".into(), pos: Some(Pos { line: 1, col: 28 }) }
        );
    }

    #[test]
    fn rejects_variable_lhs() {
        let err = parse_trs("(VAR x) (RULES x -> f(x))").unwrap_err();
        assert!(matches!(err, TrsError::VariableLhs { rule: 1, .. }));
    }

    #[test]
    fn rejects_arity_clash() {
        let err = parse_trs("(VAR x)\n(RULES\n f(x) -> f(x, x)\n)").unwrap_err();
        assert_eq!(
            err,
            TrsError::Arity { symbol: "f".into(), expected: 1, found: 2, pos: Some(Pos { line: 3, col: 10 }) }
        );
    }

    #[test]
    fn syntax_errors_have_positions() {
        let err = parse_trs("(VAR x)\n(RULES f(x) => x)").unwrap_err();
        assert!(matches!(err, TrsError::Syntax { pos: Pos { line: 2, col: 13 }, .. }), "{err}");
        assert!(parse_trs("(RULES f(x) -> a").is_err());
        assert!(parse_trs("(VAR x) (RULES f() -> a)").is_err());
        assert!(parse_trs("(VAR x) (RULES x(a) -> a)").is_err());
    }

    #[test]
    fn comments_and_whitespace() {
        let t = parse_trs("; header\n(VAR x) ; vars\n(RULES\n  s(x) -> h(0, x) ; rule\n)\n").unwrap();
        assert_eq!(t.rules()[0].to_string(), "s(x) -> h(0, x)");
    }

    #[test]
    fn empty_round_trip() {
        let t = parse_trs("(RULES )").unwrap();
        assert!(t.is_empty());
        assert_eq!(format_trs(&t), "(RULES )");
        assert_eq!(parse_trs(&format_trs(&t)).unwrap(), t);
    }

    #[test]
    fn term_vars_first_occurrence() {
        let t = parse_trs("(VAR x y) (RULES h(f(y), g(x, y)) -> y)").unwrap();
        let vs: Vec<String> = term_vars(&t.rules()[0].lhs).iter().map(|v| v.to_string()).collect();
        assert_eq!(vs, vec!["y", "x"]);
    }
}
