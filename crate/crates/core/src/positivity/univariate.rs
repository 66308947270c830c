//! Exact sign analysis of univariate polynomials on `[0, inf)` and on the
//! naturals, via Sturm sequences and bisection with rational endpoints.
//!
//! Polynomials are dense coefficient vectors, lowest power first.


use crate::numeric::{Rat, Scalar, Sign};

pub type Dense = Vec<Scalar>;

fn trim(mut p: Dense) -> Dense {
    while p.last().is_some_and(Scalar::is_zero) {
        p.pop();
    }
    p
}

fn degree(p: &[Scalar]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn eval(p: &[Scalar], x: &Scalar) -> Scalar {
    p.iter().rev().fold(Scalar::zero(), |acc, c| &(&acc * x) + c)
}

fn eval_rat(p: &[Scalar], x: &Rat) -> Scalar {
    eval(p, &Scalar::Rat(x.clone()))
}

fn derivative(p: &[Scalar]) -> Dense {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * &Scalar::int(i as i64))
        .collect()
}

/// Quotient and remainder; `b` must be non-zero.
fn divmod(a: &[Scalar], b: &[Scalar]) -> (Dense, Dense) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead = &b[db];
    let mut r = trim(a.to_vec());
    let mut q = vec![Scalar::zero(); r.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = &r[dr] / lead;
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate().take(db + 1) {
            r[i + shift] = &r[i + shift] - &(&c * bc);
        }
        q[shift] = c;
        r = trim(r);
    }
    (trim(q), r)
}

fn monic(p: &[Scalar]) -> Dense {
    let d = degree(p).expect("zero polynomial has no leading coefficient");
    let lead = p[d].clone();
    p[..=d].iter().map(|c| c / &lead).collect()
}

fn gcd(a: &[Scalar], b: &[Scalar]) -> Dense {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let (_, r) = divmod(&a, &b);
        a = b;
        b = r;
    }
    if a.is_empty() {
        a
    } else {
        monic(&a)
    }
}

/// The square-free part: same distinct roots, all simple. Monic.
fn square_free(p: &[Scalar]) -> Dense {
    let g = gcd(p, &derivative(p));
    let (q, _) = divmod(p, &g);
    monic(&q)
}

struct Sturm {
    seq: Vec<Dense>,
}

impl Sturm {
    fn new(q: &[Scalar]) -> Sturm {
        let mut seq = vec![q.to_vec(), derivative(q)];
        loop {
            let n = seq.len();
            if degree(&seq[n - 1]).is_none() {
                seq.pop();
                break;
            }
            let (_, r) = divmod(&seq[n - 2], &seq[n - 1]);
            if r.is_empty() {
                break;
            }
            seq.push(r.iter().map(|c| -c).collect());
        }
        Sturm { seq }
    }

    fn variations(&self, x: &Rat) -> usize {
        let mut count = 0;
        let mut last = Sign::Zero;
        for p in &self.seq {
            let s = eval_rat(p, x).sign();
            if s == Sign::Zero {
                continue;
            }
            if last != Sign::Zero && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Number of distinct roots in `(lo, hi]`.
    fn count(&self, lo: &Rat, hi: &Rat) -> usize {
        self.variations(lo) - self.variations(hi)
    }
}

/// A rational point strictly inside `(lo, hi)` that is not a root of `q`.
fn split_point(q: &[Scalar], lo: &Rat, hi: &Rat) -> Rat {
    let width = hi - lo;
    for den in 2i64.. {
        for num in 1..den {
            let t = lo + &(&width * &Rat::new(num, den).expect("den > 0"));
            if !eval_rat(q, &t).is_zero() {
                return t;
            }
        }
    }
    unreachable!("a polynomial has finitely many roots")
}

/// Upper bound on the absolute value of every root of the monic `q`.
fn root_bound(q: &[Scalar]) -> Rat {
    let n = q.len() - 1;
    let m = q[..n]
        .iter()
        .map(Scalar::abs_upper_bound)
        .max()
        .unwrap_or_else(Rat::zero);
    &m + &Rat::one()
}

/// Disjoint isolating intervals `(lo, hi]` for the positive roots of the
/// square-free `q`, sorted, each at most `max_width` wide. Endpoints are not
/// roots.
fn isolate_positive(q: &[Scalar], max_width: Option<&Rat>) -> (Sturm, Vec<(Rat, Rat)>) {
    let sturm = Sturm::new(q);
    let bound = root_bound(q);
    let lo = Rat::zero();
    let mut out = Vec::new();
    let mut stack = vec![(lo, bound)];
    while let Some((a, b)) = stack.pop() {
        let n = sturm.count(&a, &b);
        let narrow = max_width.is_none_or(|w| &(&b - &a) <= w);
        if n == 0 {
            continue;
        }
        if n == 1 && narrow {
            out.push((a, b));
            continue;
        }
        let m = split_point(q, &a, &b);
        // Push the upper half first so the lower half is processed first.
        stack.push((m.clone(), b));
        stack.push((a, m));
    }
    (sturm, out)
}

/// Square-free part of `p` with a root at zero divided out, so that zero is
/// never a root.
fn positive_root_carrier(p: &[Scalar]) -> Dense {
    let mut q = square_free(p);
    if q[0].is_zero() {
        q.remove(0);
    }
    q
}

/// A point of `[0, inf)` where `p` is negative, or `None` if `p >= 0` there.
pub fn negative_point_nonneg_reals(p: &[Scalar]) -> Option<Rat> {
    let p = trim(p.to_vec());
    let n = degree(&p)?;
    if p[0].is_negative() {
        return Some(Rat::zero());
    }
    if n == 0 {
        return None;
    }
    let q = positive_root_carrier(&p);
    if p[n].is_negative() {
        return Some(&root_bound(&q) + &Rat::one());
    }
    let mut samples = Vec::new();
    let (sturm, intervals) = isolate_positive(&q, None);
    match intervals.first() {
        None => samples.push(Rat::one()),
        Some((lo, hi)) => {
            // A point strictly between zero and the first positive root.
            let (a, mut b) = (lo.clone(), hi.clone());
            let below = loop {
                let m = split_point(&q, &a, &b);
                if sturm.count(&a, &m) == 0 {
                    break m;
                }
                b = m;
            };
            samples.push(below);
            samples.extend(intervals.iter().map(|(_, hi)| hi.clone()));
        }
    }
    samples.into_iter().find(|x| eval_rat(&p, x).is_negative())
}

/// A natural number where `p` is negative, or `None` if `p >= 0` on all of `N`.
pub fn negative_point_naturals(p: &[Scalar]) -> Option<Rat> {
    let p = trim(p.to_vec());
    let n = degree(&p)?;
    if p[0].is_negative() {
        return Some(Rat::zero());
    }
    if n == 0 {
        return None;
    }
    let q = positive_root_carrier(&p);
    if p[n].is_negative() {
        return Some(&root_bound(&q).ceil() + &Rat::one());
    }
    // The smallest integer above each positive root witnesses every negative
    // stretch that contains an integer; roots are pinned to width 1/2.
    let half = Rat::new(1, 2).expect("non-zero");
    let mut candidates = vec![Rat::one()];
    for (lo, _) in isolate_positive(&q, Some(&half)).1 {
        let f = lo.floor();
        candidates.push(&f + &Rat::one());
        candidates.push(&f + &Rat::from_int(2));
    }
    candidates.into_iter().find(|x| eval_rat(&p, x).is_negative())
}

/// Number of distinct real roots of `p` in `(lo, hi]`; exposed for tests.
pub fn count_roots(p: &[Scalar], lo: &Rat, hi: &Rat) -> usize {
    let p = trim(p.to_vec());
    if degree(&p).is_none_or(|d| d == 0) {
        return 0;
    }
    Sturm::new(&square_free(&p)).count(lo, hi)
}
