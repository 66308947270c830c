//! Definitional oracles for the closed-form monotonicity criteria.
//!
//! Each oracle evaluates the polynomial exactly at sample points and
//! sampled pairs `x > y` and checks the defining inequalities directly, with
//! no algebra about the shape of the polynomial.

#![allow(dead_code)]

use polyterm::numeric::{Rat, Scalar};

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(p, q).unwrap()
}

pub fn s(r: &Rat) -> Scalar {
    Scalar::Rat(r.clone())
}

fn quad(a: &Rat, b: &Rat, c: &Rat, x: &Rat) -> Rat {
    &(&(a * x) + b) * x + c
}

/// Points `k/den` for `0 <= k <= den * top`.
fn grid(den: i64, top: i64) -> Vec<Rat> {
    (0..=den * top).map(|k| rat(k, den)).collect()
}

/// Increments `t > 0` tried from each base point: small dyadic steps plus
/// steps just past `delta`.
fn steps(delta: Option<&Rat>) -> Vec<Rat> {
    let base: Vec<Rat> = [(1, 64), (1, 32), (1, 16), (1, 8), (1, 4), (1, 2), (1, 1), (2, 1), (4, 1)]
        .iter()
        .map(|&(p, q)| rat(p, q))
        .collect();
    match delta {
        None => base,
        Some(d) => std::iter::once(d.clone()).chain(base.iter().map(|t| d + t)).collect(),
    }
}

/// `a*x^2 + b*x + c` over `N`: non-negative and `f(x) >= f(y) + 1` for all
/// `x > y` in `0..=8`.
pub fn n_quadratic(a: i64, b: i64, c: i64) -> bool {
    let f = |x: i64| a * x * x + b * x + c;
    (0..=8).all(|x| f(x) >= 0) && (0..=8).all(|y| (y + 1..=8).all(|x| f(x) > f(y)))
}

/// `a*x^2 + b*x + c` over the non-negative rationals: non-negative on a fine
/// grid of `[0, 10]`, and `f(y + t) >= f(y) + delta` for every sampled
/// `t >= delta` (strict) or `f(y + t) >= f(y)` for every sampled `t > 0`
/// (weak, `delta = None`).
pub fn dense_quadratic(a: &Rat, b: &Rat, c: &Rat, delta: Option<&Rat>) -> bool {
    let zero = Rat::zero();
    if grid(64, 10).iter().any(|x| quad(a, b, c, x) < zero) {
        return false;
    }
    let need = delta.cloned().unwrap_or_else(Rat::zero);
    let ts = steps(delta);
    grid(8, 16).iter().all(|y| {
        let fy = quad(a, b, c, y);
        ts.iter().all(|t| quad(a, b, c, &(y + t)) >= &fy + &need)
    })
}

/// `a0 + a1*x1 + ... + an*xn` over the non-negative rationals: non-negative
/// on `{0, 1/2, ..., 4}^n` and strictly `delta`-monotone in each argument
/// at those points.
pub fn dense_linear(a0: &Rat, slopes: &[Rat], delta: &Rat) -> bool {
    let f = |x: &[Rat]| slopes.iter().zip(x).fold(a0.clone(), |acc, (a, v)| &acc + &(a * v));
    let axis = grid(2, 4);
    let mut points: Vec<Vec<Rat>> = vec![Vec::new()];
    for _ in slopes {
        points = points
            .into_iter()
            .flat_map(|p| axis.iter().map(move |v| [p.clone(), vec![v.clone()]].concat()))
            .collect();
    }
    let ts = steps(Some(delta));
    points.iter().all(|p| {
        let fp = f(p);
        fp >= Rat::zero()
            && (0..p.len()).all(|i| {
                ts.iter().all(|t| {
                    let mut q = p.clone();
                    q[i] = &q[i] + t;
                    f(&q) >= &fp + delta
                })
            })
    })
}
