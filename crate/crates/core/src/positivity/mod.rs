//! Non-negativity of polynomials over `N^n`, `Q0^n` and `R0^n`.
//!
//! Every check in the crate reduces to `p >= 0` on the carrier. The decision
//! ladder tries, in order: absolute positiveness; the closed-form univariate
//! quadratic test (dense carriers); shifted absolute positiveness (`N`); an
//! exact univariate decision by root isolation; restriction of multivariate
//! polynomials to axes and the diagonal; grid sampling. Whatever survives is
//! `Unknown`.

pub mod univariate;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::numeric::{Carrier, Rat, Scalar};
use crate::poly::{Poly, Var};

/// How a non-negativity claim was established.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Method {
    /// Every coefficient is non-negative.
    AbsolutelyPositive,
    /// `a*x^2 + b*x + c >= 0` on `[0, inf)` iff `a, c >= 0` and (`b >= 0` or `b^2 <= 4ac`).
    UnivariateQuadratic,
    /// Root isolation with Sturm sequences.
    UnivariateExact,
    /// Absolute positiveness after moving every variable past `shift`,
    /// with the finitely many points below it checked separately.
    ShiftedAbsolutelyPositive { shift: u32 },
    /// A closed-form monotonicity criterion, named.
    ClosedForm(&'static str),
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::AbsolutelyPositive => write!(f, "absolute-positiveness"),
            Method::UnivariateQuadratic => write!(f, "univariate-quadratic"),
            Method::UnivariateExact => write!(f, "univariate-exact"),
            Method::ShiftedAbsolutelyPositive { shift } => write!(f, "shifted-absolute-positiveness(s={shift})"),
            Method::ClosedForm(name) => write!(f, "closed-form({name})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Proved(Method),
    /// `witness` lies in the carrier and the polynomial evaluates to `value < 0` there.
    Disproved {
        witness: BTreeMap<Var, Scalar>,
        value: Scalar,
    },
    Unknown,
}

impl Verdict {
    pub fn is_proved(&self) -> bool {
        matches!(self, Verdict::Proved(_))
    }

    pub fn is_disproved(&self) -> bool {
        matches!(self, Verdict::Disproved { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Proved(_) => "proved",
            Verdict::Disproved { .. } => "disproved",
            Verdict::Unknown => "unknown",
        }
    }
}

/// Tuning for the ladder's incomplete steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositivityConfig {
    /// Largest shift tried by shifted absolute positiveness over `N`.
    pub max_shift: u32,
    /// Grid denominators for counterexample sampling on dense carriers.
    pub denominators: Vec<u32>,
    /// Grid coordinates are `k/den` for `0 <= k <= max_numerator`.
    pub max_numerator: u32,
    /// Upper limit on the number of sampled points.
    pub max_points: usize,
    /// Upper limit on `(shift + 1)^n` patterns in the multivariate shift test.
    pub max_shift_patterns: usize,
}

impl Default for PositivityConfig {
    fn default() -> Self {
        PositivityConfig {
            max_shift: 8,
            denominators: vec![1, 2, 4, 8],
            max_numerator: 32,
            max_points: 100_000,
            max_shift_patterns: 10_000,
        }
    }
}

/// Decides `p >= 0` on the carrier with the default configuration.
pub fn nonneg_on(p: &Poly, carrier: Carrier) -> Verdict {
    nonneg_on_with(p, carrier, &PositivityConfig::default())
}

/// Decides `p - q - margin >= 0` on the carrier.
pub fn excess_at_least(p: &Poly, q: &Poly, margin: &Scalar, carrier: Carrier) -> Verdict {
    let diff = &(p - q) - &Poly::constant(margin.clone());
    nonneg_on(&diff, carrier)
}

pub fn nonneg_on_with(p: &Poly, carrier: Carrier, cfg: &PositivityConfig) -> Verdict {
    if p.all_coeffs_nonneg() {
        return Verdict::Proved(Method::AbsolutelyPositive);
    }
    let vars: Vec<Var> = p.variables().into_iter().collect();
    if vars.is_empty() {
        // A negative constant.
        return Verdict::Disproved { witness: BTreeMap::new(), value: p.constant_term() };
    }
    if vars.len() == 1 {
        let coeffs = p.univariate_coeffs(&vars[0]).expect("single variable");
        return univariate_verdict(&vars[0], &coeffs, carrier, cfg);
    }
    if carrier == Carrier::N {
        if let Some(shift) = shifted_absolutely_positive(p, &vars, cfg) {
            return Verdict::Proved(Method::ShiftedAbsolutelyPositive { shift });
        }
    }
    if let Some(v) = restriction_witness(p, &vars, carrier) {
        return v;
    }
    if let Some(v) = grid_witness(p, &vars, carrier, cfg) {
        return v;
    }
    Verdict::Unknown
}

fn disproved(p: &Poly, witness: BTreeMap<Var, Scalar>) -> Verdict {
    let value = p.eval(&witness).expect("witness binds every variable");
    debug_assert!(value.is_negative());
    Verdict::Disproved { witness, value }
}

fn univariate_verdict(v: &Var, coeffs: &[Scalar], carrier: Carrier, cfg: &PositivityConfig) -> Verdict {
    let p = Poly::univariate(v, coeffs);
    let at = |x: Scalar| disproved(&p, BTreeMap::from([(v.clone(), x)]));
    match carrier {
        Carrier::Q0 | Carrier::R0 if coeffs.len() <= 3 => match quadratic_witness(coeffs) {
            None => Verdict::Proved(Method::UnivariateQuadratic),
            Some(x) => at(x),
        },
        Carrier::Q0 | Carrier::R0 => match univariate::negative_point_nonneg_reals(coeffs) {
            None => Verdict::Proved(Method::UnivariateExact),
            Some(x) => at(Scalar::Rat(x)),
        },
        Carrier::N => {
            if let Some(shift) = shifted_absolutely_positive(&p, std::slice::from_ref(v), cfg) {
                return Verdict::Proved(Method::ShiftedAbsolutelyPositive { shift });
            }
            match univariate::negative_point_naturals(coeffs) {
                None => Verdict::Proved(Method::UnivariateExact),
                Some(x) => at(Scalar::Rat(x)),
            }
        }
    }
}

/// For `c0 + c1*x + c2*x^2`: a point of `[0, inf)` where it is negative, if any.
pub fn quadratic_witness(coeffs: &[Scalar]) -> Option<Scalar> {
    let get = |i: usize| coeffs.get(i).cloned().unwrap_or_default();
    let (c, b, a) = (get(0), get(1), get(2));
    if c.is_negative() {
        return Some(Scalar::zero());
    }
    if a.is_negative() {
        return Some(&(&(&b.abs() + &c.abs()) / &a.abs()) + &Scalar::one());
    }
    if b.is_nonneg() {
        return None;
    }
    if a.is_zero() {
        return Some(&(&c + &Scalar::one()) / &b.abs());
    }
    let discriminant = &(&b * &b) - &(&(&a * &c) * &Scalar::int(4));
    if discriminant.is_positive() {
        // The vertex lies to the right of zero and the minimum is negative.
        Some(&(-&b) / &(&a * &Scalar::int(2)))
    } else {
        None
    }
}

/// Smallest `s <= max_shift` such that moving every variable either to a
/// fixed value below `s` or past `s` always yields an absolutely positive
/// polynomial. Every point of `N^n` is covered by one of these patterns.
fn shifted_absolutely_positive(p: &Poly, vars: &[Var], cfg: &PositivityConfig) -> Option<u32> {
    for s in 1..=cfg.max_shift {
        let patterns = (s as usize + 1).checked_pow(vars.len() as u32)?;
        if patterns > cfg.max_shift_patterns {
            return None;
        }
        if shift_patterns_ok(p, vars, s) {
            return Some(s);
        }
    }
    None
}

fn shift_patterns_ok(p: &Poly, vars: &[Var], s: u32) -> bool {
    let Some((v, rest)) = vars.split_first() else {
        return p.all_coeffs_nonneg();
    };
    let shifted = p.shift(v, &Scalar::int(s as i64));
    if !shift_patterns_ok(&shifted, rest, s) {
        return false;
    }
    (0..s).all(|k| {
        let fixed = p.substitute(&BTreeMap::from([(v.clone(), Poly::int(k as i64))]));
        shift_patterns_ok(&fixed, rest, s)
    })
}

/// Restricts `p` to each coordinate axis and to the diagonal, deciding each
/// univariate restriction exactly.
fn restriction_witness(p: &Poly, vars: &[Var], carrier: Carrier) -> Option<Verdict> {
    let t: Var = Arc::from("#t");
    let mut lines: Vec<BTreeMap<Var, Poly>> = Vec::new();
    for v in vars {
        lines.push(
            vars.iter()
                .map(|w| (w.clone(), if w == v { Poly::var(&t) } else { Poly::zero() }))
                .collect(),
        );
    }
    lines.push(vars.iter().map(|w| (w.clone(), Poly::var(&t))).collect());
    for line in lines {
        let r = p.compose(&line).expect("every variable mapped");
        let coeffs = r.univariate_coeffs(&t).unwrap_or_else(|| vec![r.constant_term()]);
        let x = match carrier {
            Carrier::N => univariate::negative_point_naturals(&coeffs).map(Scalar::Rat),
            _ if coeffs.len() <= 3 => quadratic_witness(&coeffs),
            _ => univariate::negative_point_nonneg_reals(&coeffs).map(Scalar::Rat),
        };
        if let Some(x) = x {
            let witness = line
                .iter()
                .map(|(w, img)| (w.clone(), if img.is_zero() { Scalar::zero() } else { x.clone() }))
                .collect();
            return Some(disproved(p, witness));
        }
    }
    None
}

/// Grid coordinates in canonical order: integers, then halves, quarters, ...
/// Each value appears once, at its smallest denominator.
pub fn grid_values(carrier: Carrier, cfg: &PositivityConfig) -> Vec<Vec<Rat>> {
    let dens: Vec<u32> = match carrier {
        Carrier::N => vec![1],
        _ => cfg.denominators.clone(),
    };
    let mut seen = std::collections::BTreeSet::new();
    let mut levels = Vec::new();
    for d in dens {
        let mut level = Vec::new();
        for k in 0..=cfg.max_numerator {
            let r = Rat::new(k as i64, d as i64).expect("positive denominator");
            if seen.insert(r.clone()) {
                level.push(r);
            }
        }
        levels.push(level);
    }
    levels
}

/// The least grid point (by denominator level, then lexicographically)
/// where `p` is negative.
fn grid_witness(p: &Poly, vars: &[Var], carrier: Carrier, cfg: &PositivityConfig) -> Option<Verdict> {
    let levels = grid_values(carrier, cfg);
    let mut values: Vec<Rat> = Vec::new();
    let mut budget = cfg.max_points;
    for level in levels {
        let old = values.len();
        values.extend(level);
        let n = vars.len() as u32;
        let total = values.len().checked_pow(n)?;
        let done = old.checked_pow(n).unwrap_or(0);
        if total - done > budget {
            return None;
        }
        budget -= total - done;
        // Points using at least one coordinate from the newest level, in lex order.
        let mut idx = vec![0usize; vars.len()];
        loop {
            if idx.iter().any(|&i| i >= old) {
                let point: BTreeMap<Var, Scalar> = vars
                    .iter()
                    .zip(&idx)
                    .map(|(v, &i)| (v.clone(), Scalar::Rat(values[i].clone())))
                    .collect();
                if p.eval(&point).expect("point binds every variable").is_negative() {
                    return Some(disproved(p, point));
                }
            }
            if !advance(&mut idx, values.len()) {
                break;
            }
        }
    }
    None
}

/// Odometer step over `[0, base)^n`, last coordinate fastest; false after the last tuple.
fn advance(idx: &mut [usize], base: usize) -> bool {
    for k in (0..idx.len()).rev() {
        idx[k] += 1;
        if idx[k] < base {
            return true;
        }
        idx[k] = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn x() -> Var {
        Arc::from("x")
    }

    #[test]
    fn quadratic_dips_on_q0() {
        let v = nonneg_on(&p("2*x^2 - x"), Carrier::Q0);
        assert_eq!(
            v,
            Verdict::Disproved {
                witness: BTreeMap::from([(x(), Scalar::ratio(1, 4))]),
                value: Scalar::ratio(-1, 8)
            }
        );
    }

    #[test]
    fn shift_on_naturals() {
        assert_eq!(nonneg_on(&p("2*x^2 - x"), Carrier::N), Verdict::Proved(Method::ShiftedAbsolutelyPositive { shift: 1 }));
        assert_eq!(nonneg_on(&p("4*x^2 - 2*x"), Carrier::N), Verdict::Proved(Method::ShiftedAbsolutelyPositive { shift: 1 }));
        assert_eq!(nonneg_on(&p("x^2*y^2 - x*y"), Carrier::N), Verdict::Proved(Method::ShiftedAbsolutelyPositive { shift: 1 }));
        assert!(nonneg_on(&p("x*y - x - y + 1"), Carrier::N).is_disproved());
    }

    #[test]
    fn zero_and_constants() {
        assert_eq!(nonneg_on(&Poly::zero(), Carrier::R0), Verdict::Proved(Method::AbsolutelyPositive));
        assert!(nonneg_on(&p("-1"), Carrier::N).is_disproved());
    }

    #[test]
    fn excess_examples() {
        let v = excess_at_least(&p("8*x^2 + 2*x + 1"), &p("4*x^2 + 4*x"), &Scalar::one(), Carrier::N);
        assert!(v.is_proved());
        let v = excess_at_least(&p("4*x^2 + 2*x + 1"), &p("4*x^2 + 2*x"), &Scalar::one(), Carrier::R0);
        assert_eq!(v, Verdict::Proved(Method::AbsolutelyPositive));
        let q = p("x^2 - 3*x");
        assert!(excess_at_least(&q, &q, &Scalar::zero(), Carrier::Q0).is_proved());
    }

    #[test]
    fn multivariate_counterexamples() {
        // Negative on the diagonal only.
        let v = nonneg_on(&p("x^2 + y^2 - 3*x*y"), Carrier::Q0);
        assert!(v.is_disproved());
        // Negative at (1, 1) on N and nowhere on the axes.
        let v = nonneg_on(&p("2*x^2*y^2 - 3*x*y + x + y"), Carrier::N);
        assert!(v.is_proved() || v.is_unknown());
        let v = nonneg_on(&p("x*y - 2*x - 2*y + 3"), Carrier::N);
        match v {
            Verdict::Disproved { value, .. } => assert!(value.is_negative()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn multivariate_shift_is_sound() {
        // (x - y)^2 is non-negative but the shift never makes it absolutely positive.
        let v = nonneg_on(&p("x^2 - 2*x*y + y^2"), Carrier::N);
        assert!(!v.is_disproved());
        // x*y - x + 1 >= 0 on N: at y = 0 it is 1 - x < 0 for x >= 2.
        assert!(nonneg_on(&p("x*y - x + 1"), Carrier::N).is_disproved());
    }

    #[test]
    fn irrational_quadratic() {
        let q = p("x^2 - 2*sqrt(2)*x + 2");
        assert_eq!(nonneg_on(&q, Carrier::R0), Verdict::Proved(Method::UnivariateQuadratic));
        let q = p("x^2 - 2*sqrt(2)*x + 1");
        assert!(nonneg_on(&q, Carrier::R0).is_disproved());
    }
}
