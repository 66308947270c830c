//! Coefficient grids and per-symbol candidate polynomials in canonical order.

use std::cmp::Ordering;

use crate::interp::criteria::{monotone_in, Strictness};
use crate::interp::params;
use crate::numeric::{DomainKind, DomainTag, Rat, Scalar};
use crate::poly::{Monomial, Poly, Var};
use crate::positivity::{nonneg_on, Verdict};

/// Grid values in canonical order: smaller magnitude first, positive before
/// negative, zero first of all.
pub fn rational_grid(max_coeff: i64, denominators: &[i64]) -> Vec<Rat> {
    let mut vals: Vec<Rat> = Vec::new();
    for &q in denominators {
        for p in -max_coeff..=max_coeff {
            vals.push(Rat::new(p, q).expect("denominators are validated"));
        }
    }
    vals.sort_by(canonical_rat);
    vals.dedup();
    vals
}

fn canonical_rat(a: &Rat, b: &Rat) -> Ordering {
    a.abs().cmp(&b.abs()).then_with(|| b.cmp(a))
}

/// Coefficient grid for a domain: integers over `N`, the rational grid over
/// `Q`, and `a + b*sqrt(d)` with `a`, `b` from the rational grid over `R`.
/// Elements are ordered by the sum of the ranks of `a` and `b`, then by `b`.
pub fn scalar_grid(rationals: &[Rat], sqrt: Option<u64>) -> Vec<Scalar> {
    let Some(d) = sqrt else {
        return rationals.iter().cloned().map(Scalar::Rat).collect();
    };
    let mut ranked = Vec::new();
    for (i, a) in rationals.iter().enumerate() {
        for (j, b) in rationals.iter().enumerate() {
            let s = Scalar::quad(a.clone(), b.clone(), d).expect("radicand is validated");
            ranked.push(((i + j, j, i), s));
        }
    }
    ranked.sort_by_key(|x| x.0);
    ranked.into_iter().map(|(_, s)| s).collect()
}

/// Monomials over `x1..xn` of degree at most `k`, ascending.
pub fn monomials(arity: usize, k: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::one()];
    let ps = params(arity);
    let mut layer = vec![Monomial::one()];
    for _ in 0..k {
        let mut next = Vec::new();
        for m in &layer {
            for p in &ps {
                let n = m.mul(&Monomial::var(p.clone()));
                if !next.contains(&n) {
                    next.push(n);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out.sort();
    out.dedup();
    out
}

/// Why a candidate polynomial was discarded by the per-symbol checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Filter {
    Kept,
    Failed,
    Undecided,
}

/// Well-definedness, strict monotonicity and (if `weak`) weak monotonicity.
pub fn symbol_filter(poly: &Poly, arity: usize, domain: &DomainTag, weak: bool) -> Filter {
    if poly.constant_term().is_negative() {
        return Filter::Failed;
    }
    let ps = params(arity);
    if ps.iter().any(|p| poly.degree_in(p) == 0) {
        return Filter::Failed;
    }
    let mut undecided = false;
    let mut note = |v: Verdict| -> bool {
        match v {
            Verdict::Proved(_) => true,
            Verdict::Disproved { .. } => false,
            Verdict::Unknown => {
                undecided = true;
                false
            }
        }
    };
    let kinds: &[Strictness] = if weak { &[Strictness::Strict, Strictness::Weak] } else { &[Strictness::Strict] };
    let mut ok = note(nonneg_on(poly, domain.carrier()));
    'outer: for kind in kinds {
        for (i, x) in ps.iter().enumerate() {
            if !ok {
                break 'outer;
            }
            let others: Vec<Var> = ps.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, v)| v.clone()).collect();
            ok = note(monotone_in(poly, x, &others, domain, *kind));
        }
    }
    match (ok, undecided) {
        (true, _) => Filter::Kept,
        (false, true) => Filter::Undecided,
        (false, false) => Filter::Failed,
    }
}

/// One admissible polynomial for a symbol.
#[derive(Debug, Clone)]
pub struct Candidate {
    pub poly: Poly,
    /// Exponent vectors and floating-point coefficients, for quick sampling.
    pub fast: Vec<(Vec<u32>, f64)>,
}

impl Candidate {
    fn new(poly: Poly, arity: usize) -> Candidate {
        let ps = params(arity);
        let fast = poly
            .terms()
            .map(|(m, c)| (ps.iter().map(|p| m.exponent(p)).collect(), c.to_f64()))
            .collect();
        Candidate { poly, fast }
    }

    pub fn eval_f64(&self, args: &[f64]) -> f64 {
        eval_fast(&self.fast, args)
    }
}

/// All candidates for a symbol of the given arity, in canonical order:
/// constants for arity 0; otherwise by exact degree `1..=max_degree`, and
/// within a degree by the sum of the coefficient ranks, then
/// lexicographically with monomials ascending. `undecided` counts
/// polynomials dropped because a check returned unknown.
pub fn candidates(
    arity: usize,
    max_degree: u32,
    grid: &[Scalar],
    domain: &DomainTag,
    weak: bool,
    undecided: &mut u64,
) -> Vec<Candidate> {
    let degrees: Vec<u32> = if arity == 0 { vec![0] } else { (1..=max_degree).collect() };
    let ps = params(arity);
    let grid_f64: Vec<f64> = grid.iter().map(Scalar::to_f64).collect();
    let probe = Probe::new(arity, domain);
    let mut out = Vec::new();
    for k in degrees {
        let monos = monomials(arity, k);
        let top: Vec<bool> = monos.iter().map(|m| m.degree() == k).collect();
        let mentions: Vec<Vec<bool>> = monos.iter().map(|m| ps.iter().map(|p| m.exponent(p) > 0).collect()).collect();
        let exps: Vec<Vec<u32>> = monos.iter().map(|m| ps.iter().map(|p| m.exponent(p)).collect()).collect();
        let max_rank = grid.len() - 1;
        // Sound sign constraints: a negative quadratic coefficient breaks
        // well-definedness (squares) or monotonicity (mixed terms) as one
        // variable grows; over Q and R weak monotonicity at the origin needs
        // non-negative linear coefficients; the constant must be non-negative.
        let allowed: Vec<Vec<bool>> = monos
            .iter()
            .map(|m| {
                let nonneg_only = m.degree() != 1 || (weak && domain.kind() != DomainKind::N);
                grid.iter().map(|g| !(nonneg_only && g.is_negative())).collect()
            })
            .collect();
        let mut ranks = vec![0usize; monos.len()];
        for total in 0..=monos.len() * max_rank {
            compositions(&mut ranks, 0, total, max_rank, &allowed, &mut |rs| {
                if k > 0 && !rs.iter().zip(&top).any(|(&r, &t)| t && r != 0) {
                    return;
                }
                let covered = (0..arity).all(|v| rs.iter().zip(&mentions).any(|(&r, m)| r != 0 && m[v]));
                if !covered {
                    return;
                }
                let fast: Vec<(Vec<u32>, f64)> = exps
                    .iter()
                    .zip(rs)
                    .filter(|(_, &r)| r != 0)
                    .map(|(e, &r)| (e.clone(), grid_f64[r]))
                    .collect();
                if probe.refutes(&fast, weak) {
                    return;
                }
                let terms: Vec<(Scalar, Monomial)> = monos
                    .iter()
                    .zip(rs)
                    .filter(|(_, &r)| r != 0)
                    .map(|(m, &r)| (grid[r].clone(), m.clone()))
                    .collect();
                let poly = Poly::from_terms(terms);
                match symbol_filter(&poly, arity, domain, weak) {
                    Filter::Kept => out.push(Candidate::new(poly, arity)),
                    Filter::Undecided => *undecided += 1,
                    Filter::Failed => {}
                }
            });
        }
    }
    out
}

fn eval_fast(fast: &[(Vec<u32>, f64)], args: &[f64]) -> f64 {
    fast.iter()
        .map(|(exps, c)| exps.iter().zip(args).fold(*c, |acc, (&e, &x)| acc * x.powi(e as i32)))
        .sum()
}

/// Sample points for refuting well-definedness and monotonicity cheaply
/// before the exact checks.
struct Probe {
    points: Vec<Vec<f64>>,
    margin: f64,
    strict_steps: Vec<f64>,
    weak_steps: Vec<f64>,
}

impl Probe {
    fn new(arity: usize, domain: &DomainTag) -> Probe {
        let margin = domain.margin().to_f64();
        let (values, weak_steps): (&[f64], Vec<f64>) = match domain {
            DomainTag::N => (&[0.0, 1.0, 2.0, 3.0], vec![1.0]),
            _ => (&[0.0, 0.25, 0.5, 1.0, 2.0], vec![0.125, 1.0]),
        };
        let mut points: Vec<Vec<f64>> = vec![Vec::new()];
        if arity <= 3 {
            for _ in 0..arity {
                points = points
                    .into_iter()
                    .flat_map(|p| values.iter().map(move |&v| [p.clone(), vec![v]].concat()))
                    .collect();
            }
        } else {
            points = values.iter().map(|&v| vec![v; arity]).collect();
        }
        Probe { points, margin, strict_steps: vec![margin, margin + 1.0], weak_steps }
    }

    fn refutes(&self, fast: &[(Vec<u32>, f64)], weak: bool) -> bool {
        let below = |x: f64, bound: f64| x < bound - 1e-9 * (x.abs() + bound.abs() + 1.0);
        for p in &self.points {
            let base = eval_fast(fast, p);
            if below(base, 0.0) {
                return true;
            }
            for i in 0..p.len() {
                let mut q = p.clone();
                for &t in &self.strict_steps {
                    q[i] = p[i] + t;
                    if below(eval_fast(fast, &q) - base, self.margin) {
                        return true;
                    }
                }
                if weak {
                    for &t in &self.weak_steps {
                        q[i] = p[i] + t;
                        if below(eval_fast(fast, &q) - base, 0.0) {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }
}

/// Calls `f` on every vector of `digits.len()` entries in `0..=max` summing
/// to `total`, lexicographically.
/// Position `i` only takes digits `d` with `allowed[i][d]`.
fn compositions(
    digits: &mut [usize],
    at: usize,
    total: usize,
    max: usize,
    allowed: &[Vec<bool>],
    f: &mut impl FnMut(&[usize]),
) {
    let rest = digits.len() - at;
    if rest == 0 {
        if total == 0 {
            f(digits);
        }
        return;
    }
    if total > rest * max {
        return;
    }
    for d in 0..=max.min(total) {
        if !allowed[at][d] {
            continue;
        }
        digits[at] = d;
        compositions(digits, at + 1, total - d, max, allowed, f);
    }
    digits[at] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_order() {
        let g: Vec<String> = rational_grid(2, &[1, 2]).iter().map(|r| r.to_string()).collect();
        assert_eq!(g, ["0", "1/2", "-1/2", "1", "-1", "2", "-2"].map(String::from));
    }

    #[test]
    fn monomial_layers() {
        let m: Vec<String> = monomials(2, 2).iter().map(|m| Poly::term(Scalar::one(), m.clone()).to_string()).collect();
        assert_eq!(m.len(), 6);
        assert_eq!(m[0], "1");
    }

    #[test]
    fn unary_linear_over_n() {
        let grid = scalar_grid(&rational_grid(2, &[1]), None);
        let mut undecided = 0;
        let cs = candidates(1, 1, &grid, &DomainTag::N, false, &mut undecided);
        let shown: Vec<String> = cs.iter().map(|c| c.poly.to_string()).collect();
        assert_eq!(shown, ["x1", "x1 + 1", "2*x1", "2*x1 + 1", "x1 + 2", "2*x1 + 2"].map(String::from));
        assert_eq!(undecided, 0);
    }
}
