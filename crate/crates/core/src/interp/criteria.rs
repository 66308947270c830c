//! Monotonicity tests for a single argument of an interpretation polynomial.
//!
//! Strict monotonicity in argument `i` means `f(.., x_i + t, ..) - f(..) >= m`
//! whenever `t >= m`, where `m` is the domain's margin (`delta`, or 1 over
//! `N`); weak monotonicity means the same difference is `>= 0` for `t >= 0`.
//! When `x_i` occurs only in monomials `x_i` and `x_i^2` the difference
//! depends on `x_i` and `t` alone, and exact closed forms decide it. Otherwise
//! the difference polynomial is handed to the positivity ladder.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::numeric::{DomainTag, Scalar};
use crate::poly::{Monomial, Poly, Var};
use crate::positivity::{nonneg_on, Method, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strictness {
    Strict,
    Weak,
}

impl Strictness {
    pub fn label(self) -> &'static str {
        match self {
            Strictness::Strict => "strict",
            Strictness::Weak => "weak",
        }
    }
}

/// Name of the fresh increment variable in difference polynomials.
pub const INCREMENT: &str = "h";

/// Well-defined and strictly monotone over `N`, for `a*x^2 + b*x + c` with integer
/// coefficients and `a != 0`: `a > 0`, `c >= 0`, `a + b > 0`.
pub fn strict_quadratic_over_n(a: &Scalar, b: &Scalar, c: &Scalar) -> bool {
    a.is_positive() && c.is_nonneg() && (a + b).is_positive()
}

/// Well-defined and strictly monotone over `Q` or `R` with margin `delta`, for
/// `a0 + a1*x1 + ... + an*xn`: `a0 >= 0` and every `ai >= 1`.
pub fn strict_linear_over_dense(a0: &Scalar, slopes: &[Scalar]) -> bool {
    a0.is_nonneg() && slopes.iter().all(|a| (a - &Scalar::one()).is_nonneg())
}

/// Well-defined and strictly monotone over `Q` or `R` with margin `delta`, for
/// `a*x^2 + b*x + c` with `a != 0`: `a > 0`, `c >= 0`, `a*delta + b >= 1`, and
/// `b >= 0` or `4ac - b^2 >= 0`.
pub fn strict_quadratic_over_dense(a: &Scalar, b: &Scalar, c: &Scalar, delta: &Scalar) -> bool {
    let four_ac = &(a * c) * &Scalar::int(4);
    a.is_positive()
        && c.is_nonneg()
        && (&(&(a * delta) + b) - &Scalar::one()).is_nonneg()
        && (b.is_nonneg() || (&four_ac - &(b * b)).is_nonneg())
}

/// Well-defined and weakly monotone over `Q` or `R`, for `a*x^2 + b*x + c`
/// with `a != 0`: `a > 0` and `b, c >= 0`.
pub fn weak_quadratic_over_dense(a: &Scalar, b: &Scalar, c: &Scalar) -> bool {
    a.is_positive() && b.is_nonneg() && c.is_nonneg()
}

/// Monotonicity alone (no well-definedness) for a polynomial whose
/// dependence on the argument is `a*x^2 + b*x + rest`, where `rest` does not
/// mention `x`.
///
/// With `t` the increment, the difference is `a*(2xt + t^2) + b*t`; it is
/// smallest at `x = 0` when `a >= 0`, and `a*t^2 + b*t` grows with `t` once
/// it clears the margin at the least admissible `t`.
pub fn separable_monotone(a: &Scalar, b: &Scalar, domain: &DomainTag, kind: Strictness) -> bool {
    if a.is_negative() {
        return false;
    }
    match (kind, domain) {
        // a*m + b >= 1 at the least increment t = m.
        (Strictness::Strict, DomainTag::N) => (&(a + b) - &Scalar::one()).is_nonneg(),
        (Strictness::Strict, _) => (&(&(a * &domain.margin()) + b) - &Scalar::one()).is_nonneg(),
        // t = 1 is the least non-zero increment over N.
        (Strictness::Weak, DomainTag::N) => (a + b).is_nonneg(),
        // Arbitrarily small increments force b >= 0.
        (Strictness::Weak, _) => b.is_nonneg(),
    }
}

pub fn closed_form_name(domain: &DomainTag, kind: Strictness) -> &'static str {
    match (kind, domain) {
        (Strictness::Strict, DomainTag::N) => "quadratic-strict-N",
        (Strictness::Strict, _) => "quadratic-strict-delta",
        (Strictness::Weak, DomainTag::N) => "quadratic-weak-N",
        (Strictness::Weak, _) => "quadratic-weak",
    }
}

/// If `x` occurs in `p` only as `x` or `x^2` (never multiplied by another
/// variable), the coefficients `(a, b)` of `x^2` and `x`.
pub fn separable_coeffs(p: &Poly, x: &str) -> Option<(Scalar, Scalar)> {
    let mut a = Scalar::zero();
    let mut b = Scalar::zero();
    for (m, c) in p.terms() {
        let e = m.exponent(x);
        if e == 0 {
            continue;
        }
        if m.powers().len() > 1 || e > 2 {
            return None;
        }
        if e == 2 {
            a = c.clone();
        } else {
            b = c.clone();
        }
    }
    Some((a, b))
}

/// `f(.., x + shift, ..) - f(..) - margin` with the increment variable `h`,
/// over the same carrier as the domain.
pub fn difference_poly(p: &Poly, x: &str, domain: &DomainTag, kind: Strictness) -> Poly {
    let h = Poly::var(INCREMENT);
    let (shift, margin) = match kind {
        Strictness::Strict => (&Poly::constant(domain.margin()) + &h, domain.margin()),
        Strictness::Weak => (h, Scalar::zero()),
    };
    let var: Var = Arc::from(x);
    let moved = p.substitute(&BTreeMap::from([(var.clone(), &Poly::var(x) + &shift)]));
    &(&moved - p) - &Poly::constant(margin)
}

/// Monotonicity of `p` in variable `x` via the difference polynomial only.
pub fn monotone_general(p: &Poly, x: &str, domain: &DomainTag, kind: Strictness) -> Verdict {
    nonneg_on(&difference_poly(p, x, domain, kind), domain.carrier())
}

/// Monotonicity of `p` in variable `x`: closed form when `x` is separable,
/// the difference polynomial otherwise. Failures carry a witness over `x`,
/// the increment `h`, and `others` (set to zero).
pub fn monotone_in(p: &Poly, x: &str, others: &[Var], domain: &DomainTag, kind: Strictness) -> Verdict {
    let Some((a, b)) = separable_coeffs(p, x) else {
        return monotone_general(p, x, domain, kind);
    };
    if separable_monotone(&a, &b, domain, kind) {
        return Verdict::Proved(Method::ClosedForm(closed_form_name(domain, kind)));
    }
    // The difference only involves x and h: restrict to h = 0, then x = 0.
    let d = difference_poly(p, x, domain, kind);
    let carrier = domain.carrier();
    let zero_rest = |keep: &str| -> BTreeMap<Var, Poly> {
        others
            .iter()
            .cloned()
            .chain([Arc::from(x), Arc::from(INCREMENT)])
            .filter(|v| &**v != keep)
            .map(|v| (v, Poly::zero()))
            .collect()
    };
    for keep in [x, INCREMENT] {
        let r = d.substitute(&zero_rest(keep));
        if let Verdict::Disproved { witness, .. } = nonneg_on(&r, carrier) {
            let mut point: BTreeMap<Var, Scalar> = zero_rest(keep).into_keys().map(|v| (v, Scalar::zero())).collect();
            point.insert(Arc::from(keep), witness.values().next().cloned().unwrap_or_default());
            let value = d.eval(&point).expect("all variables bound");
            return Verdict::Disproved { witness: point, value };
        }
    }
    // Not reached for separable polynomials; fall back to the general check.
    monotone_general(p, x, domain, kind)
}

/// True for polynomials of total degree at most one in every monomial.
pub fn is_linear_shape(p: &Poly) -> bool {
    p.terms().all(|(m, _)| m.degree() <= 1)
}

/// Constant term and coefficients of `vars` in a linear polynomial.
pub fn linear_coeffs(p: &Poly, vars: &[Var]) -> (Scalar, Vec<Scalar>) {
    let slopes = vars.iter().map(|v| p.coeff(&Monomial::var(v.clone()))).collect();
    (p.constant_term(), slopes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Rat;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn q1() -> DomainTag {
        DomainTag::q(Rat::one()).unwrap()
    }

    #[test]
    fn examples_over_n() {
        let v = monotone_in(&p("2*x1^2 - x1"), "x1", &[], &DomainTag::N, Strictness::Strict);
        assert!(v.is_proved());
        assert!(strict_quadratic_over_n(&Scalar::int(2), &Scalar::int(-1), &Scalar::zero()));
    }

    #[test]
    fn examples_over_q() {
        assert!(monotone_in(&p("x1^2"), "x1", &[], &q1(), Strictness::Strict).is_proved());
        assert!(monotone_in(&p("x1^2 + x1"), "x1", &[], &q1(), Strictness::Weak).is_proved());
        let h = p("x1 + x2 + 2");
        assert!(monotone_in(&h, "x2", &[Arc::from("x1")], &q1(), Strictness::Strict).is_proved());
    }

    #[test]
    fn failures_have_witnesses() {
        let d = DomainTag::q(Rat::new(1, 2).unwrap()).unwrap();
        // a*delta + b = 1/2 < 1
        let f = p("x1^2");
        match monotone_in(&f, "x1", &[], &d, Strictness::Strict) {
            Verdict::Disproved { witness, value } => {
                assert!(value.is_negative());
                assert_eq!(difference_poly(&f, "x1", &d, Strictness::Strict).eval(&witness).unwrap(), value);
            }
            other => panic!("{other:?}"),
        }
        // Weak monotonicity fails for b < 0 over Q.
        assert!(monotone_in(&p("x1^2 - x1"), "x1", &[], &q1(), Strictness::Weak).is_disproved());
        // Negative leading coefficient.
        assert!(monotone_in(&p("5*x1 - x1^2"), "x1", &[], &DomainTag::N, Strictness::Strict).is_disproved());
    }

    #[test]
    fn non_separable_goes_general() {
        let f = p("x1*x2 + x1 + x2");
        assert!(monotone_in(&f, "x1", &[Arc::from("x2")], &DomainTag::N, Strictness::Strict).is_proved());
    }
}
