//! Sparse multivariate polynomials with exact [`Scalar`] coefficients.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use thiserror::Error;

use crate::numeric::{NumericError, Rat, Scalar, Sign};

pub type Var = Arc<str>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("division by a non-constant expression at offset {0}")]
    NonConstantDivisor(usize),
    #[error("no substitution given for variable `{0}`")]
    MissingSubstitution(Var),
    #[error("variable `{0}` has no value")]
    UnboundVariable(Var),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

/// Degree of a polynomial; the zero polynomial has degree minus infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

/// A power product `x1^e1 * ... * xk^ek`, variables sorted by name, exponents positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Monomial {
        Monomial(vec![(v, 1)])
    }

    pub fn from_powers<I: IntoIterator<Item = (Var, u32)>>(powers: I) -> Monomial {
        let mut acc: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in powers {
            *acc.entry(v).or_insert(0) += e;
        }
        Monomial(acc.into_iter().filter(|(_, e)| *e > 0).collect())
    }

    pub fn powers(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, v: &str) -> u32 {
        self.0.iter().find(|(w, _)| &**w == v).map_or(0, |(_, e)| *e)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then exponent vectors compared
    /// variable by variable in name order.
    fn cmp(&self, other: &Monomial) -> Ordering {
        let by_degree = self.degree().cmp(&other.degree());
        if by_degree != Ordering::Equal {
            return by_degree;
        }
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    // `self` has a variable that `other` lacks at this position.
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Monomial) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A polynomial: map from monomials to non-zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Poly {
        Poly::term(c, Monomial::one())
    }

    pub fn int(n: i64) -> Poly {
        Poly::constant(Scalar::int(n))
    }

    pub fn var(name: &str) -> Poly {
        Poly::term(Scalar::one(), Monomial::var(Arc::from(name)))
    }

    pub fn term(c: Scalar, m: Monomial) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    /// Builds a polynomial from `(coefficient, monomial)` pairs, merging duplicates.
    pub fn from_terms<I: IntoIterator<Item = (Scalar, Monomial)>>(terms: I) -> Poly {
        let mut p = Poly::zero();
        for (c, m) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Univariate polynomial `sum coeffs[i] * v^i`.
    pub fn univariate(v: &str, coeffs: &[Scalar]) -> Poly {
        let var: Var = Arc::from(v);
        Poly::from_terms(coeffs.iter().enumerate().map(|(i, c)| {
            let m = if i == 0 { Monomial::one() } else { Monomial(vec![(var.clone(), i as u32)]) };
            (c.clone(), m)
        }))
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        self.try_add_term(m, c).unwrap_or_else(|e| panic!("polynomial arithmetic: {e}"))
    }

    fn try_add_term(&mut self, m: Monomial, c: Scalar) -> Result<(), NumericError> {
        if c.is_zero() {
            return Ok(());
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let sum = old.checked_add(&c)?;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *old = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&Monomial::one())
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        match self.degree() {
            Degree::NegInfinity => Some(Scalar::zero()),
            Degree::Finite(0) => Some(self.constant_term()),
            _ => None,
        }
    }

    pub fn degree(&self) -> Degree {
        self.terms
            .keys()
            .map(Monomial::degree)
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    /// Highest exponent of `v` in any term.
    pub fn degree_in(&self, v: &str) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(v, _)| v.clone()))
            .collect()
    }

    pub fn is_linear(&self) -> bool {
        self.degree() <= Degree::Finite(1)
    }

    /// Coefficients of `self` as a univariate polynomial in `v`, lowest power
    /// first; `None` if another variable occurs.
    pub fn univariate_coeffs(&self, v: &str) -> Option<Vec<Scalar>> {
        let n = self.degree_in(v) as usize;
        let mut out = vec![Scalar::zero(); n + 1];
        for (m, c) in &self.terms {
            match m.0.as_slice() {
                [] => out[0] = c.clone(),
                [(w, e)] if &**w == v => out[*e as usize] = c.clone(),
                _ => return None,
            }
        }
        Some(out)
    }

    /// Every coefficient is non-negative.
    pub fn all_coeffs_nonneg(&self) -> bool {
        self.terms.values().all(Scalar::is_nonneg)
    }

    /// The radicand shared by the irrational coefficients, if any.
    pub fn radicand(&self) -> Result<Option<u64>, NumericError> {
        let mut found = None;
        for c in self.terms.values() {
            if let Some(d) = c.radicand() {
                match found {
                    Some(e) if e != d => return Err(NumericError::MismatchedRadicand(e, d)),
                    _ => found = Some(d),
                }
            }
        }
        Ok(found)
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly, NumericError> {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.try_add_term(m.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly, NumericError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly, NumericError> {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.try_add_term(m1.mul(m2), c1.checked_mul(c2)?)?;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Simultaneous substitution of every variable. Fails if a variable has no image.
    pub fn compose(&self, subst: &BTreeMap<Var, Poly>) -> Result<Poly, PolyError> {
        self.substitute_with(|v| subst.get(v).cloned(), true)
    }

    /// Simultaneous substitution of the mapped variables; others are kept.
    pub fn substitute(&self, subst: &BTreeMap<Var, Poly>) -> Poly {
        self.substitute_with(|v| subst.get(v).cloned(), false)
            .expect("partial substitution cannot miss a variable")
    }

    /// Replaces `v` by `v + shift`.
    pub fn shift(&self, v: &str, shift: &Scalar) -> Poly {
        let var: Var = Arc::from(v);
        let image = Poly::var(v) + Poly::constant(shift.clone());
        self.substitute(&BTreeMap::from([(var, image)]))
    }

    fn substitute_with(
        &self,
        image: impl Fn(&Var) -> Option<Poly>,
        total: bool,
    ) -> Result<Poly, PolyError> {
        // Cache powers of each image so repeated exponents are computed once.
        let mut powers: BTreeMap<(Var, u32), Poly> = BTreeMap::new();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut prod = Poly::constant(c.clone());
            for (v, e) in &m.0 {
                let factor = match image(v) {
                    Some(p) => powers
                        .entry((v.clone(), *e))
                        .or_insert_with(|| p.pow(*e))
                        .clone(),
                    None if total => return Err(PolyError::MissingSubstitution(v.clone())),
                    None => Poly::term(Scalar::one(), Monomial(vec![(v.clone(), *e)])),
                };
                prod = prod.checked_mul(&factor)?;
            }
            out = out.checked_add(&prod)?;
        }
        Ok(out)
    }

    pub fn eval(&self, point: &BTreeMap<Var, Scalar>) -> Result<Scalar, PolyError> {
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in &m.0 {
                let x = point.get(v).ok_or_else(|| PolyError::UnboundVariable(v.clone()))?;
                t = t.checked_mul(&x.pow(*e))?;
            }
            acc = acc.checked_add(&t)?;
        }
        Ok(acc)
    }

    /// Sign of the value at `point`.
    pub fn sign_at(&self, point: &BTreeMap<Var, Scalar>) -> Result<Sign, PolyError> {
        Ok(self.eval(point)?.sign())
    }

    /// Renames variables; the map must be injective on the variables of `self`.
    pub fn rename(&self, names: &BTreeMap<Var, Var>) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| {
            let m = Monomial::from_powers(
                m.0.iter()
                    .map(|(v, e)| (names.get(v).cloned().unwrap_or_else(|| v.clone()), *e)),
            );
            (c.clone(), m)
        }))
    }
}

macro_rules! poly_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                self.$checked(rhs).unwrap_or_else(|e| panic!("polynomial arithmetic: {e}"))
            }
        }
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}

poly_binop!(Add, add, checked_add);
poly_binop!(Sub, sub, checked_sub);
poly_binop!(Mul, mul, checked_mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

fn is_plain_rational(c: &Scalar) -> bool {
    c.as_rat().is_some() || c.rational_part().is_zero()
}

impl fmt::Display for Poly {
    /// Terms from the highest monomial down, e.g. `2*x1^2 - x1 + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            // Single-signed coefficients print their sign as the joining operator.
            let (negative, mag) = if is_plain_rational(c) && c.is_negative() {
                (true, -c)
            } else {
                (false, c.clone())
            };
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let coeff = if is_plain_rational(&mag) {
                mag.to_string()
            } else {
                format!("({mag})")
            };
            if m.is_one() {
                write!(f, "{coeff}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{coeff}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl FromStr for Poly {
    type Err = PolyError;

    /// Parses `+ - * / ^`, parentheses, non-negative integer literals,
    /// identifiers and `sqrt(n)`. Division is only allowed by non-zero constants.
    fn from_str(s: &str) -> Result<Poly, PolyError> {
        let mut p = Parser { src: s.as_bytes(), pos: 0 };
        let poly = p.expr()?;
        p.skip_ws();
        if p.pos < p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(poly)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> PolyError {
        PolyError::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), PolyError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Poly, PolyError> {
        let mut acc = if self.eat(b'-') {
            -self.term()?
        } else {
            self.eat(b'+');
            self.term()?
        };
        loop {
            if self.eat(b'+') {
                acc = acc.checked_add(&self.term()?)?;
            } else if self.eat(b'-') {
                acc = acc.checked_sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly, PolyError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = acc.checked_mul(&self.factor()?)?;
            } else if self.eat(b'/') {
                let at = self.pos;
                let divisor = self.factor()?;
                let c = divisor.as_constant().ok_or(PolyError::NonConstantDivisor(at))?;
                let inv = c.checked_recip().map_err(|_| PolyError::Syntax {
                    pos: at,
                    msg: "division by zero".into(),
                })?;
                acc = acc.checked_mul(&Poly::constant(inv))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Poly, PolyError> {
        if self.eat(b'-') {
            return Ok(-self.factor()?);
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.integer()?;
            let e: u32 = e.try_into().map_err(|_| self.error("exponent too large"))?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn integer(&mut self) -> Result<BigInt, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digit string"))
    }

    fn atom(&mut self) -> Result<Poly, PolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let p = self.expr()?;
                self.expect(b')')?;
                Ok(p)
            }
            Some(c) if c.is_ascii_digit() => Ok(Poly::constant(Scalar::Rat(Rat::from_int(self.integer()?)))),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len() {
                    let c = self.src[self.pos];
                    if c.is_ascii_alphanumeric() || c == b'_' || c == b'\'' {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier");
                if name == "sqrt" {
                    self.expect(b'(')?;
                    let at = self.pos;
                    let n = self.integer()?;
                    self.expect(b')')?;
                    let n: u64 = n.try_into().map_err(|_| PolyError::Syntax {
                        pos: at,
                        msg: "radicand too large".into(),
                    })?;
                    Ok(Poly::constant(Scalar::sqrt_of(n)?))
                } else {
                    Ok(Poly::var(name))
                }
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn var(s: &str) -> Var {
        Arc::from(s)
    }

    #[test]
    fn print_descending() {
        assert_eq!(p("1 - x1 + 2*x1^2").to_string(), "2*x1^2 - x1 + 1");
        assert_eq!(p("x*y + y^2 + x^2").to_string(), "x^2 + x*y + y^2");
        assert_eq!(p("0*x").to_string(), "0");
        assert_eq!(p("-x + 1/2").to_string(), "-x + 1/2");
        assert_eq!(p("(1 + 2*sqrt(2))*x").to_string(), "(1+2*sqrt(2))*x");
        assert_eq!(p("sqrt(2)*x + 1").to_string(), "sqrt(2)*x + 1");
        assert_eq!(p("-sqrt(2)*x").to_string(), "-sqrt(2)*x");
    }

    #[test]
    fn print_parse_round_trip() {
        for s in ["2*x1^2 - x1 + 1", "x + y + 3", "-1/2*x^3 + (1-sqrt(3))*y", "0", "-5", "sqrt(2)"] {
            let q = p(s);
            assert_eq!(p(&q.to_string()), q, "{s}");
        }
    }

    #[test]
    fn parse_errors() {
        assert!(matches!("x / y".parse::<Poly>(), Err(PolyError::NonConstantDivisor(_))));
        assert!(matches!("x +".parse::<Poly>(), Err(PolyError::Syntax { .. })));
        assert!(matches!("x )".parse::<Poly>(), Err(PolyError::Syntax { pos: 2, .. })));
        assert!("1/0".parse::<Poly>().is_err());
        assert!(matches!(
            "sqrt(2) + sqrt(3)".parse::<Poly>(),
            Err(PolyError::Numeric(NumericError::MismatchedRadicand(2, 3)))
        ));
    }

    #[test]
    fn arithmetic() {
        assert_eq!(p("(x+1)^2"), p("x^2 + 2*x + 1"));
        assert_eq!(p("x - x"), Poly::zero());
        assert_eq!(p("(x+y)*(x-y)"), p("x^2 - y^2"));
        assert_eq!(p("x/2 + x/2"), p("x"));
    }

    #[test]
    fn composition() {
        let f = p("2*x1^2 - x1");
        let subst = BTreeMap::from([(var("x1"), p("x + 1"))]);
        assert_eq!(f.compose(&subst).unwrap(), p("2*x^2 + 3*x + 1"));
        let missing = p("x1 + x2").compose(&subst);
        assert_eq!(missing, Err(PolyError::MissingSubstitution(var("x2"))));
        assert_eq!(p("x*y").shift("x", &Scalar::int(2)), p("x*y + 2*y"));
    }

    #[test]
    fn evaluation() {
        let pt = BTreeMap::from([(var("x"), Scalar::ratio(1, 4))]);
        assert_eq!(p("2*x^2 - x").eval(&pt).unwrap(), Scalar::ratio(-1, 8));
        assert_eq!(p("y").eval(&pt), Err(PolyError::UnboundVariable(var("y"))));
    }

    #[test]
    fn degree_and_shape() {
        assert_eq!(Poly::zero().degree(), Degree::NegInfinity);
        assert_eq!(p("7").degree(), Degree::Finite(0));
        assert_eq!(p("x*y^2 + x").degree(), Degree::Finite(3));
        assert_eq!(p("3*x^2 - 1").univariate_coeffs("x").unwrap(), vec![Scalar::int(-1), Scalar::zero(), Scalar::int(3)]);
        assert!(p("x*y").univariate_coeffs("x").is_none());
        assert!(p("x + y").is_linear());
    }

    #[test]
    fn monomial_order() {
        let m = |s: &str| p(s).terms().next().unwrap().0.clone();
        assert!(m("x^2") > m("x*y"));
        assert!(m("x*y") > m("y^2"));
        assert!(m("y^2") > m("x"));
        assert!(m("x") > m("y"));
        assert!(m("y") > Monomial::one());
    }
}
