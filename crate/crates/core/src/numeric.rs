//! Exact scalars: arbitrary-precision rationals and elements of a real
//! quadratic field `Q(sqrt(d))`.
//!
//! Every comparison is decided exactly. The sign of `a + b*sqrt(d)` is found
//! by case analysis on the signs of `a` and `b`, squaring both sides when
//! they disagree.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot mix sqrt({0}) and sqrt({1}) in one computation")]
    MismatchedRadicand(u64, u64),
    #[error("radicand {0} is not a square-free integer >= 2")]
    BadRadicand(u64),
    #[error("{0}")]
    Syntax(String),
}

/// Sign of an exact number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    fn of_ordering(o: Ordering) -> Sign {
        match o {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }
}

/// An arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Rat, NumericError> {
        let den = den.into();
        if den.is_zero() {
            return Err(NumericError::ZeroDenominator);
        }
        Ok(Rat(BigRational::new(num.into(), den)))
    }

    pub fn from_int(n: impl Into<BigInt>) -> Rat {
        Rat(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Rat {
        Rat(BigRational::zero())
    }

    pub fn one() -> Rat {
        Rat(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn sign(&self) -> Sign {
        Sign::of_ordering(self.0.numer().sign().cmp(&num_bigint::Sign::NoSign))
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    pub fn floor(&self) -> Rat {
        Rat(self.0.floor())
    }

    pub fn ceil(&self) -> Rat {
        Rat(self.0.ceil())
    }

    pub fn checked_div(&self, other: &Rat) -> Result<Rat, NumericError> {
        if other.is_zero() {
            return Err(NumericError::DivisionByZero);
        }
        Ok(Rat(&self.0 / &other.0))
    }

    pub fn recip(&self) -> Result<Rat, NumericError> {
        Rat::one().checked_div(self)
    }

    pub fn pow(&self, exp: u32) -> Rat {
        Rat(num_traits::pow(self.0.clone(), exp as usize))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Rat {
        Rat::from_int(n)
    }
}

impl From<BigRational> for Rat {
    fn from(r: BigRational) -> Rat {
        Rat(r)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

macro_rules! rat_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Rat> for &Rat {
            type Output = Rat;
            fn $m(self, rhs: &Rat) -> Rat {
                Rat((&self.0).$m(&rhs.0))
            }
        }
        impl $tr<Rat> for Rat {
            type Output = Rat;
            fn $m(self, rhs: Rat) -> Rat {
                Rat(self.0.$m(rhs.0))
            }
        }
        impl $tr<&Rat> for Rat {
            type Output = Rat;
            fn $m(self, rhs: &Rat) -> Rat {
                Rat(self.0.$m(&rhs.0))
            }
        }
    };
}

rat_binop!(Add, add);
rat_binop!(Sub, sub);
rat_binop!(Mul, mul);

impl Div<&Rat> for &Rat {
    type Output = Rat;
    /// Panics on a zero divisor; use [`Rat::checked_div`] otherwise.
    fn div(self, rhs: &Rat) -> Rat {
        self.checked_div(rhs).expect("rational division by zero")
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

/// Returns true if `d >= 2` and no prime square divides `d`.
pub fn is_square_free(d: u64) -> bool {
    if d < 2 {
        return false;
    }
    let mut n = d;
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// Splits `n` as `k^2 * m` with `m` square-free (or 1).
pub fn square_free_decompose(n: u64) -> (u64, u64) {
    let mut k = 1u64;
    let mut m = 1u64;
    let mut rest = n;
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        let mut e = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        k *= p.pow(e / 2);
        if e % 2 == 1 {
            m *= p;
        }
        p += 1;
    }
    m *= rest;
    (k, m)
}

/// `a + b*sqrt(d)` with `b != 0` and `d` square-free.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    a: Rat,
    b: Rat,
    d: u64,
}

impl QuadExt {
    pub fn a(&self) -> &Rat {
        &self.a
    }

    pub fn b(&self) -> &Rat {
        &self.b
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    fn sign(&self) -> Sign {
        let sa = self.a.sign();
        let sb = self.b.sign();
        if sb == Sign::Zero {
            return sa;
        }
        if sa == Sign::Zero || sa == sb {
            return sb;
        }
        let a2 = &self.a * &self.a;
        let b2d = &(&self.b * &self.b) * &Rat::from_int(self.d);
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Sign::Zero,
        }
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", Scalar::Quad(self.clone()))
    }
}

/// Coefficient domain: a rational, or an element of one quadratic field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(Rat),
    /// Invariant: `b` is non-zero, so equal values have equal representations.
    Quad(QuadExt),
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar::Rat(Rat::zero())
    }

    pub fn one() -> Scalar {
        Scalar::Rat(Rat::one())
    }

    pub fn int(n: i64) -> Scalar {
        Scalar::Rat(Rat::from_int(n))
    }

    pub fn ratio(num: i64, den: i64) -> Scalar {
        Scalar::Rat(Rat::new(num, den).expect("zero denominator"))
    }

    /// Builds `a + b*sqrt(d)`; `d` must be square-free.
    pub fn quad(a: Rat, b: Rat, d: u64) -> Result<Scalar, NumericError> {
        if !is_square_free(d) {
            return Err(NumericError::BadRadicand(d));
        }
        Ok(Scalar::make_quad(a, b, d))
    }

    /// `sqrt(n)` for any positive integer `n`, simplified to `k*sqrt(m)`.
    pub fn sqrt_of(n: u64) -> Result<Scalar, NumericError> {
        if n == 0 {
            return Ok(Scalar::zero());
        }
        let (k, m) = square_free_decompose(n);
        if m == 1 {
            Ok(Scalar::Rat(Rat::from_int(k)))
        } else {
            Ok(Scalar::make_quad(Rat::zero(), Rat::from_int(k), m))
        }
    }

    fn make_quad(a: Rat, b: Rat, d: u64) -> Scalar {
        if b.is_zero() {
            Scalar::Rat(a)
        } else {
            Scalar::Quad(QuadExt { a, b, d })
        }
    }

    pub fn rational_part(&self) -> &Rat {
        match self {
            Scalar::Rat(r) => r,
            Scalar::Quad(q) => &q.a,
        }
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Quad(_) => None,
        }
    }

    /// The radicand, if this value is irrational.
    pub fn radicand(&self) -> Option<u64> {
        match self {
            Scalar::Rat(_) => None,
            Scalar::Quad(q) => Some(q.d),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_integer() && r.numer().is_one())
    }

    pub fn is_integer(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_integer())
    }

    pub fn sign(&self) -> Sign {
        match self {
            Scalar::Rat(r) => r.sign(),
            Scalar::Quad(q) => q.sign(),
        }
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == Sign::Negative
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Sign::Positive
    }

    pub fn is_nonneg(&self) -> bool {
        self.sign() != Sign::Negative
    }

    fn common_radicand(&self, other: &Scalar) -> Result<Option<u64>, NumericError> {
        match (self.radicand(), other.radicand()) {
            (Some(d1), Some(d2)) if d1 != d2 => Err(NumericError::MismatchedRadicand(d1, d2)),
            (Some(d), _) | (_, Some(d)) => Ok(Some(d)),
            _ => Ok(None),
        }
    }

    fn parts(&self) -> (Rat, Rat) {
        match self {
            Scalar::Rat(r) => (r.clone(), Rat::zero()),
            Scalar::Quad(q) => (q.a.clone(), q.b.clone()),
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, NumericError> {
        if let (Scalar::Rat(x), Scalar::Rat(y)) = (self, other) {
            return Ok(Scalar::Rat(x + y));
        }
        let d = self.common_radicand(other)?.expect("irrational operand");
        let (a1, b1) = self.parts();
        let (a2, b2) = other.parts();
        Ok(Scalar::make_quad(a1 + a2, b1 + b2, d))
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, NumericError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, NumericError> {
        match (self, other) {
            (Scalar::Rat(x), Scalar::Rat(y)) => Ok(Scalar::Rat(x * y)),
            (Scalar::Rat(x), Scalar::Quad(q)) | (Scalar::Quad(q), Scalar::Rat(x)) => {
                Ok(Scalar::make_quad(x * &q.a, x * &q.b, q.d))
            }
            (Scalar::Quad(p), Scalar::Quad(q)) => {
                if p.d != q.d {
                    return Err(NumericError::MismatchedRadicand(p.d, q.d));
                }
                let d = Rat::from_int(p.d);
                let a = &(&p.a * &q.a) + &(&(&p.b * &q.b) * &d);
                let b = &(&p.a * &q.b) + &(&q.a * &p.b);
                Ok(Scalar::make_quad(a, b, p.d))
            }
        }
    }

    pub fn checked_recip(&self) -> Result<Scalar, NumericError> {
        match self {
            Scalar::Rat(r) => Ok(Scalar::Rat(r.recip()?)),
            Scalar::Quad(q) => {
                // (a - b*sqrt(d)) / (a^2 - b^2 d); the norm is non-zero for square-free d.
                let norm = &(&q.a * &q.a) - &(&(&q.b * &q.b) * &Rat::from_int(q.d));
                let a = q.a.checked_div(&norm)?;
                let b = (-&q.b).checked_div(&norm)?;
                Ok(Scalar::make_quad(a, b, q.d))
            }
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, NumericError> {
        if other.is_zero() {
            return Err(NumericError::DivisionByZero);
        }
        self.common_radicand(other)?;
        self.checked_mul(&other.checked_recip()?)
    }

    pub fn checked_cmp(&self, other: &Scalar) -> Result<Ordering, NumericError> {
        if let (Scalar::Rat(x), Scalar::Rat(y)) = (self, other) {
            return Ok(x.cmp(y));
        }
        Ok(match self.checked_sub(other)?.sign() {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        })
    }

    pub fn pow(&self, exp: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn abs(&self) -> Scalar {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// A rational number greater than or equal to `|self|`.
    pub fn abs_upper_bound(&self) -> Rat {
        match self {
            Scalar::Rat(r) => r.abs(),
            Scalar::Quad(q) => {
                let root_ceil = Rat::from_int(num_integer::Roots::sqrt(&q.d) + 1);
                &q.a.abs() + &(&q.b.abs() * &root_ceil)
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Rat(r) => r.to_f64(),
            Scalar::Quad(q) => q.a.to_f64() + q.b.to_f64() * (q.d as f64).sqrt(),
        }
    }
}

impl From<Rat> for Scalar {
    fn from(r: Rat) -> Scalar {
        Scalar::Rat(r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Scalar {
        Scalar::int(n)
    }
}

impl PartialOrd for Scalar {
    /// `None` when the operands live in different quadratic fields.
    fn partial_cmp(&self, other: &Scalar) -> Option<Ordering> {
        self.checked_cmp(other).ok()
    }
}

macro_rules! scalar_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("scalar arithmetic: {e}"),
                }
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}

// The operator impls panic on mismatched radicands or division by zero; the
// `checked_*` methods report those as errors.
scalar_binop!(Add, add, checked_add);
scalar_binop!(Sub, sub, checked_sub);
scalar_binop!(Mul, mul, checked_mul);
scalar_binop!(Div, div, checked_div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::Quad(q) => Scalar::Quad(QuadExt {
                a: -&q.a,
                b: -&q.b,
                d: q.d,
            }),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{r}"),
            Scalar::Quad(q) => {
                let surd = |b: &Rat| {
                    if b.abs() == Rat::one() {
                        format!("sqrt({})", q.d)
                    } else {
                        format!("{}*sqrt({})", b.abs(), q.d)
                    }
                };
                if q.a.is_zero() {
                    let sign = if q.b.sign() == Sign::Negative { "-" } else { "" };
                    write!(f, "{sign}{}", surd(&q.b))
                } else {
                    let op = if q.b.sign() == Sign::Negative { '-' } else { '+' };
                    write!(f, "{}{op}{}", q.a, surd(&q.b))
                }
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = NumericError;

    fn from_str(s: &str) -> Result<Scalar, NumericError> {
        let poly = crate::poly::Poly::from_str(s).map_err(|e| NumericError::Syntax(e.to_string()))?;
        poly.as_constant()
            .ok_or_else(|| NumericError::Syntax(format!("`{s}` is not a constant")))
    }
}

impl FromStr for Rat {
    type Err = NumericError;

    fn from_str(s: &str) -> Result<Rat, NumericError> {
        match s.parse::<Scalar>()? {
            Scalar::Rat(r) => Ok(r),
            Scalar::Quad(_) => Err(NumericError::Syntax(format!("`{s}` is not rational"))),
        }
    }
}

/// Which number domain an interpretation lives in, without its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DomainKind {
    N,
    Q,
    R,
}

impl FromStr for DomainKind {
    type Err = NumericError;

    fn from_str(s: &str) -> Result<DomainKind, NumericError> {
        match s {
            "N" => Ok(DomainKind::N),
            "Q" => Ok(DomainKind::Q),
            "R" => Ok(DomainKind::R),
            _ => Err(NumericError::Syntax(format!("unknown domain `{s}`"))),
        }
    }
}

impl fmt::Display for DomainKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DomainKind::N => "N",
            DomainKind::Q => "Q",
            DomainKind::R => "R",
        };
        f.write_str(s)
    }
}

/// The non-negative part of a domain: the carrier of an interpretation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Carrier {
    N,
    Q0,
    R0,
}

/// Domain of an interpretation together with its strictness step `delta`.
///
/// Over `N` the step is implicitly 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DomainTag {
    N,
    Q { delta: Rat },
    R { delta: Scalar, sqrt: Option<u64> },
}

impl DomainTag {
    pub fn q(delta: Rat) -> Result<DomainTag, NumericError> {
        if delta.sign() != Sign::Positive {
            return Err(NumericError::Syntax(format!("delta must be positive, got {delta}")));
        }
        Ok(DomainTag::Q { delta })
    }

    pub fn r(delta: Scalar, sqrt: Option<u64>) -> Result<DomainTag, NumericError> {
        if let Some(d) = sqrt {
            if !is_square_free(d) {
                return Err(NumericError::BadRadicand(d));
            }
        }
        match (delta.radicand(), sqrt) {
            (Some(dd), Some(d)) if dd != d => return Err(NumericError::MismatchedRadicand(dd, d)),
            (Some(dd), None) => return Err(NumericError::MismatchedRadicand(dd, 0)),
            _ => {}
        }
        if !delta.is_positive() {
            return Err(NumericError::Syntax(format!("delta must be positive, got {delta}")));
        }
        Ok(DomainTag::R { delta, sqrt })
    }

    pub fn kind(&self) -> DomainKind {
        match self {
            DomainTag::N => DomainKind::N,
            DomainTag::Q { .. } => DomainKind::Q,
            DomainTag::R { .. } => DomainKind::R,
        }
    }

    pub fn carrier(&self) -> Carrier {
        match self {
            DomainTag::N => Carrier::N,
            DomainTag::Q { .. } => Carrier::Q0,
            DomainTag::R { .. } => Carrier::R0,
        }
    }

    /// The minimal gap `x - y` for `x > y`: 1 over `N`, `delta` otherwise.
    pub fn margin(&self) -> Scalar {
        match self {
            DomainTag::N => Scalar::one(),
            DomainTag::Q { delta } => Scalar::Rat(delta.clone()),
            DomainTag::R { delta, .. } => delta.clone(),
        }
    }

    pub fn sqrt(&self) -> Option<u64> {
        match self {
            DomainTag::R { sqrt, .. } => *sqrt,
            _ => None,
        }
    }

    /// Whether `c` is a legal coefficient in this domain.
    pub fn admits(&self, c: &Scalar) -> bool {
        match self {
            DomainTag::N => c.is_integer(),
            DomainTag::Q { .. } => c.as_rat().is_some(),
            DomainTag::R { sqrt, .. } => match c.radicand() {
                None => true,
                Some(d) => Some(d) == *sqrt,
            },
        }
    }
}

impl fmt::Display for DomainTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DomainTag::N => write!(f, "(DOMAIN N)"),
            DomainTag::Q { delta } => write!(f, "(DOMAIN Q (DELTA {delta}))"),
            DomainTag::R { delta, sqrt } => {
                write!(f, "(DOMAIN R (DELTA {delta})")?;
                if let Some(d) = sqrt {
                    write!(f, " (SQRT {d})")?;
                }
                write!(f, ")")
            }
        }
    }
}
