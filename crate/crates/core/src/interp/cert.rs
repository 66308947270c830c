//! Text format for certificates.
//!
//! ```text
//! (DOMAIN Q (DELTA 1))
//! (INTERP
//!   (0 () 0)
//!   (s (x) x + 1)
//!   (h (x y) x + y)
//! )
//! ```
//!
//! Rule-removal proofs replace `INTERP` by
//! `(STEPS (STEP [DOMAIN] (INTERP ...) (REMOVE i j ...)) ...)`, where the
//! indices are 1-based positions in the residual system at that step and a
//! step may override the top-level `DOMAIN` (same kind, other margin).

use std::fmt::Write as _;

use thiserror::Error;

use super::{check_incremental, CheckReport, IncrementalProof, IncrementalReport, Interp, InterpError, Overall, Step};
use crate::numeric::{is_square_free, DomainTag, Scalar};
use crate::trs::{Pos, Trs};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: Pos, msg: String },
    #[error("at {pos}: {source}")]
    Interp { pos: Pos, source: InterpError },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    Direct(Interp),
    Incremental(IncrementalProof),
}

impl Certificate {
    pub fn domain(&self) -> &DomainTag {
        match self {
            Certificate::Direct(i) => i.domain(),
            Certificate::Incremental(p) => &p.domain,
        }
    }

    pub fn check(&self, trs: &Trs) -> Result<Checked, InterpError> {
        Ok(match self {
            Certificate::Direct(i) => Checked::Direct(i.check_certificate(trs)?),
            Certificate::Incremental(p) => Checked::Incremental(check_incremental(p, trs)?),
        })
    }
}

/// Report for either kind of certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Checked {
    Direct(CheckReport),
    Incremental(IncrementalReport),
}

impl Checked {
    pub fn overall(&self) -> Overall {
        match self {
            Checked::Direct(r) => r.overall(),
            Checked::Incremental(r) => r.overall(),
        }
    }

    pub fn is_accepted(&self) -> bool {
        self.overall() == Overall::Accepted
    }

    pub fn has_unknown(&self) -> bool {
        match self {
            Checked::Direct(r) => r.has_unknown(),
            Checked::Incremental(r) => r.steps.iter().any(|s| s.report.has_unknown()),
        }
    }

    /// Where the first failure happened, e.g. `step 2: strict compatibility of rule 1`.
    pub fn failure_site(&self) -> Option<String> {
        match self {
            Checked::Direct(r) => r.first_failure().map(|(site, _)| site.to_string()),
            Checked::Incremental(r) => match r.first_failure() {
                Some((step, site, _)) => Some(format!("step {step}: {site}")),
                None if !r.remaining.is_empty() => Some(format!("{} rules remain after the last step", r.remaining.len())),
                None => None,
            },
        }
    }
}

struct Reader<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Reader<'a> {
    fn location(&self, offset: usize) -> Pos {
        let before = &self.src[..offset];
        let line = before.matches('\n').count() + 1;
        let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Pos { line, col }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, CertError> {
        Err(CertError::Syntax { pos: self.location(self.pos), msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        loop {
            let rest = &self.src[self.pos..];
            let trimmed = rest.trim_start();
            self.pos += rest.len() - trimmed.len();
            if trimmed.starts_with(';') {
                self.pos += trimmed.find('\n').unwrap_or(trimmed.len());
            } else {
                return;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), CertError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn word(&mut self) -> Result<&'a str, CertError> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_' || c == '\''))
            .unwrap_or(rest.len());
        if len == 0 {
            return self.err("expected an identifier");
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    /// Peeks at `( KEYWORD` without consuming it.
    fn at_keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        let save = self.pos;
        let found = self.eat('(') && self.word().is_ok_and(|w| w == kw);
        self.pos = save;
        found
    }

    fn keyword(&mut self, kw: &str) -> Result<(), CertError> {
        self.expect('(')?;
        let at = self.pos;
        match self.word() {
            Ok(w) if w == kw => Ok(()),
            _ => {
                self.pos = at;
                self.err(format!("expected `{kw}`"))
            }
        }
    }

    /// Raw text up to the `)` that closes the current form, which is not consumed.
    fn body(&mut self) -> Result<(&'a str, usize), CertError> {
        self.skip_ws();
        let start = self.pos;
        let mut depth = 0usize;
        for (i, c) in self.src[start..].char_indices() {
            match c {
                '(' => depth += 1,
                ')' if depth == 0 => {
                    self.pos = start + i;
                    return Ok((self.src[start..start + i].trim_end(), start));
                }
                ')' => depth -= 1,
                _ => {}
            }
        }
        self.pos = self.src.len();
        self.err("unbalanced parentheses")
    }

    fn scalar(&mut self) -> Result<Scalar, CertError> {
        let (text, at) = self.body()?;
        text.parse::<Scalar>()
            .map_err(|e| CertError::Syntax { pos: self.location(at), msg: e.to_string() })
    }

    fn domain(&mut self) -> Result<DomainTag, CertError> {
        self.keyword("DOMAIN")?;
        let at = self.pos;
        let kind = self.word()?;
        let bad = |r: &Self, msg: String| CertError::Syntax { pos: r.location(at), msg };
        let tag = match kind {
            "N" => DomainTag::N,
            "Q" => {
                self.keyword("DELTA")?;
                let delta = self.scalar()?;
                self.expect(')')?;
                let delta = delta.as_rat().cloned().ok_or_else(|| bad(self, "delta over Q must be rational".into()))?;
                DomainTag::q(delta).map_err(|e| bad(self, e.to_string()))?
            }
            "R" => {
                self.keyword("DELTA")?;
                let delta = self.scalar()?;
                self.expect(')')?;
                let mut sqrt = None;
                if self.at_keyword("SQRT") {
                    self.keyword("SQRT")?;
                    let w = self.word()?;
                    let d: u64 = w.parse().map_err(|_| bad(self, format!("bad radicand `{w}`")))?;
                    if !is_square_free(d) {
                        return Err(bad(self, format!("radicand {d} is not square-free")));
                    }
                    sqrt = Some(d);
                    self.expect(')')?;
                }
                DomainTag::r(delta, sqrt).map_err(|e| bad(self, e.to_string()))?
            }
            other => {
                self.pos = at;
                return self.err(format!("unknown domain `{other}`"));
            }
        };
        self.expect(')')?;
        Ok(tag)
    }

    fn interp(&mut self, domain: DomainTag) -> Result<Interp, CertError> {
        self.keyword("INTERP")?;
        let mut interp = Interp::new(domain);
        while self.peek() == Some('(') {
            self.pos += 1;
            let at = self.pos;
            let name = self.word()?;
            self.expect('(')?;
            let mut names = Vec::new();
            while self.peek() != Some(')') {
                let w = self.word()?;
                if names.contains(&w) {
                    return self.err(format!("parameter `{w}` listed twice"));
                }
                names.push(w);
            }
            self.pos += 1;
            let (body, body_at) = self.body()?;
            if body.is_empty() {
                return self.err("missing polynomial");
            }
            self.expect(')')?;
            if interp.get(name).is_some() {
                return Err(CertError::Interp {
                    pos: self.location(at),
                    source: InterpError::Duplicate(name.to_string()),
                });
            }
            interp
                .insert_text(name, &names, body)
                .map_err(|source| CertError::Interp { pos: self.location(body_at), source })?;
        }
        self.expect(')')?;
        Ok(interp)
    }

    fn steps(&mut self, domain: &DomainTag) -> Result<Vec<Step>, CertError> {
        self.keyword("STEPS")?;
        let mut steps = Vec::new();
        while self.at_keyword("STEP") {
            self.keyword("STEP")?;
            let step_domain = if self.at_keyword("DOMAIN") {
                let at = self.pos;
                let d = self.domain()?;
                if d.kind() != domain.kind() {
                    self.pos = at;
                    return self.err("a step must use the same kind of domain as the proof");
                }
                d
            } else {
                domain.clone()
            };
            let interp = self.interp(step_domain)?;
            self.keyword("REMOVE")?;
            let mut removed = Vec::new();
            while self.peek() != Some(')') {
                let w = self.word()?;
                match w.parse::<usize>() {
                    Ok(i) => removed.push(i),
                    Err(_) => return self.err(format!("bad rule index `{w}`")),
                }
            }
            self.expect(')')?;
            self.expect(')')?;
            steps.push(Step { interp, removed });
        }
        self.expect(')')?;
        Ok(steps)
    }
}

pub fn parse_certificate(text: &str) -> Result<Certificate, CertError> {
    let mut r = Reader { src: text, pos: 0 };
    let domain = r.domain()?;
    let cert = if r.at_keyword("STEPS") {
        let steps = r.steps(&domain)?;
        Certificate::Incremental(IncrementalProof { domain, steps })
    } else {
        Certificate::Direct(r.interp(domain)?)
    };
    if r.peek().is_some() {
        return r.err("unexpected input after certificate");
    }
    Ok(cert)
}

fn write_interp(out: &mut String, interp: &Interp, indent: &str) {
    writeln!(out, "{indent}(INTERP").unwrap();
    for (name, s) in interp.symbols() {
        let ps: Vec<String> = super::params(s.arity).iter().map(|p| p.to_string()).collect();
        writeln!(out, "{indent}  ({name} ({}) {})", ps.join(" "), s.poly).unwrap();
    }
    write!(out, "{indent})").unwrap();
}

/// `(INTERP ...)` for one interpretation.
pub fn format_interp(interp: &Interp) -> String {
    let mut out = String::new();
    write_interp(&mut out, interp, "");
    out
}

/// The full certificate text, readable by [`parse_certificate`].
pub fn format_certificate(cert: &Certificate) -> String {
    let mut out = String::new();
    match cert {
        Certificate::Direct(i) => {
            writeln!(out, "{}", i.domain()).unwrap();
            write_interp(&mut out, i, "");
        }
        Certificate::Incremental(p) => {
            writeln!(out, "{}", p.domain).unwrap();
            writeln!(out, "(STEPS").unwrap();
            for s in &p.steps {
                writeln!(out, "  (STEP").unwrap();
                if s.interp.domain() != &p.domain {
                    writeln!(out, "    {}", s.interp.domain()).unwrap();
                }
                write_interp(&mut out, &s.interp, "    ");
                let idx: Vec<String> = s.removed.iter().map(usize::to_string).collect();
                writeln!(out, "\n    (REMOVE {})", idx.join(" ")).unwrap();
                writeln!(out, "  )").unwrap();
            }
            write!(out, ")").unwrap();
        }
    }
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Rat;

    const R3_Q: &str = "(DOMAIN Q (DELTA 1))\n(INTERP (a () 1/2) (f (x) 4*x) (g (y) y^2))";

    #[test]
    fn parses_direct() {
        let Certificate::Direct(i) = parse_certificate(R3_Q).unwrap() else { panic!() };
        assert_eq!(i.len(), 3);
        assert_eq!(i.get("g").unwrap().poly.to_string(), "x1^2");
        assert_eq!(i.domain(), &DomainTag::Q { delta: Rat::one() });
    }

    #[test]
    fn round_trips() {
        let c = parse_certificate(R3_Q).unwrap();
        assert_eq!(parse_certificate(&format_certificate(&c)).unwrap(), c);
        let text = "(DOMAIN R (DELTA 1) (SQRT 2)) ; comment\n(STEPS (STEP (INTERP (k (x) sqrt(2)*x + 1)) (REMOVE 2 1)) (STEP (DOMAIN R (DELTA 1/2) (SQRT 2)) (INTERP (k (x) (1+sqrt(2))*x)) (REMOVE 1)))";
        let c = parse_certificate(text).unwrap();
        let Certificate::Incremental(p) = &c else { panic!() };
        assert_eq!(p.steps[0].removed, vec![2, 1]);
        assert_eq!(p.steps[1].interp.domain().margin(), Scalar::ratio(1, 2));
        assert_eq!(parse_certificate(&format_certificate(&c)).unwrap(), c);
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_certificate("(DOMAIN Z)"), Err(CertError::Syntax { .. })));
        assert!(parse_certificate("(DOMAIN Q (DELTA 0)) (INTERP)").is_err());
        assert!(parse_certificate("(DOMAIN N) (INTERP (f (x) x/2))").is_err());
        assert!(parse_certificate("(DOMAIN N) (INTERP (f (x) y))").is_err());
        assert!(parse_certificate("(DOMAIN N) (INTERP (f (x x) x))").is_err());
        assert!(parse_certificate("(DOMAIN N) (INTERP (f (x) x) (f (x) x))").is_err());
        assert!(parse_certificate("(DOMAIN N) (INTERP (f (x) x + (1)").is_err());
        assert!(parse_certificate("(DOMAIN R (DELTA 1) (SQRT 4)) (INTERP)").is_err());
        assert!(parse_certificate("(DOMAIN N) (STEPS (STEP (DOMAIN Q (DELTA 1)) (INTERP) (REMOVE 1)))").is_err());
    }
}
