//! The first certificate found by the search, compared with a brute-force
//! enumeration that checks every assignment with the certificate checker
//! and sorts them by the documented canonical order.

use polyterm::interp::Interp;
use polyterm::numeric::{DomainKind, DomainTag, Rat, Scalar};
use polyterm::poly::{Monomial, Poly, Var};
use polyterm::prover::{search_direct, Outcome, SearchConfig};
use polyterm::trs::{parse_trs, Trs};

/// Values `p/q` with `|p| <= c`, by magnitude, positive first.
fn ranked_grid(c: i64, dens: &[i64]) -> Vec<Rat> {
    let mut out: Vec<Rat> = Vec::new();
    for &q in dens {
        for p in -c..=c {
            let r = Rat::new(p, q).unwrap();
            if !out.contains(&r) {
                out.push(r);
            }
        }
    }
    out.sort_by(|a, b| a.abs().cmp(&b.abs()).then(b.cmp(a)));
    out
}

/// Monomials `1, x1, x1^2` (unary) or `1, x1, x2` (binary, linear only).
fn monomials(arity: usize, degree: u32) -> Vec<Monomial> {
    let x = |i: usize| Var::from(format!("x{i}").as_str());
    match arity {
        0 => vec![Monomial::one()],
        1 => (0..=degree).map(|e| Monomial::from_powers((e > 0).then(|| (x(1), e)))).collect(),
        2 => vec![Monomial::one(), Monomial::var(x(1)), Monomial::var(x(2))],
        _ => unreachable!(),
    }
}

/// Every polynomial over the grid for one symbol, in canonical order:
/// by degree, then rank sum, then rank vector.
fn all_polys(arity: usize, degree: u32, grid: &[Rat]) -> Vec<Poly> {
    let monos = monomials(arity, degree);
    let mut keyed = Vec::new();
    let mut ranks = vec![0usize; monos.len()];
    loop {
        let poly = Poly::from_terms(monos.iter().zip(&ranks).map(|(m, &r)| (Scalar::Rat(grid[r].clone()), m.clone())));
        let deg = poly.degree().finite().unwrap_or(0);
        keyed.push(((deg, ranks.iter().sum::<usize>(), ranks.clone()), poly));
        let mut i = monos.len();
        loop {
            if i == 0 {
                keyed.sort_by(|a, b| a.0.cmp(&b.0));
                return keyed.into_iter().map(|(_, p)| p).collect();
            }
            i -= 1;
            ranks[i] += 1;
            if ranks[i] < grid.len() {
                break;
            }
            ranks[i] = 0;
        }
    }
}

fn brute_force(trs: &Trs, domain: DomainTag, degree: u32, grid: &[Rat]) -> Option<Interp> {
    let sig = trs.signature().to_vec();
    let lists: Vec<Vec<Poly>> = sig.iter().map(|f| all_polys(f.arity, degree, grid)).collect();
    let mut idx = vec![0usize; sig.len()];
    loop {
        let mut interp = Interp::new(domain.clone());
        for (k, f) in sig.iter().enumerate() {
            interp.insert(&f.name, f.arity, lists[k][idx[k]].clone()).unwrap();
        }
        if interp.check_certificate(trs).unwrap().is_accepted() {
            return Some(interp);
        }
        let mut k = sig.len();
        loop {
            if k == 0 {
                return None;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < lists[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

fn agree(src: &str, kind: DomainKind, degree: u32, c: i64, dens: &[i64]) {
    let trs = parse_trs(src).unwrap();
    let cfg = SearchConfig { max_degree: degree, max_coeff: c, denominators: dens.to_vec(), ..SearchConfig::default() };
    let domain = match kind {
        DomainKind::N => DomainTag::N,
        _ => DomainTag::q(Rat::one()).unwrap(),
    };
    let grid = if kind == DomainKind::N { ranked_grid(c, &[1]) } else { ranked_grid(c, dens) };
    let expected = brute_force(&trs, domain, degree, &grid);
    let found = search_direct(&trs, kind, &cfg).unwrap();
    let slow = search_direct(&trs, kind, &SearchConfig { prune: false, ..cfg.clone() }).unwrap();
    assert_eq!(found, slow, "pruning changed the result for {src}");
    match expected {
        Some(i) => assert_eq!(found, Outcome::Found(i), "{src}"),
        None => assert_eq!(found, Outcome::SpaceExhausted, "{src}"),
    }
}

#[test]
fn single_projection_rule() {
    agree("(VAR x) (RULES f(x) -> x)", DomainKind::N, 1, 2, &[1]);
}

#[test]
fn commutation() {
    agree("(VAR x) (RULES f(g(x)) -> g(f(x)))", DomainKind::N, 1, 2, &[1]);
}

#[test]
fn doubling_needs_degree_two() {
    agree("(VAR x) (RULES f(s(x)) -> s(s(f(x))))", DomainKind::N, 1, 2, &[1]);
    agree("(VAR x) (RULES f(s(x)) -> s(s(f(x))))", DomainKind::N, 2, 2, &[1]);
}

#[test]
fn binary_symbol() {
    agree("(VAR x y) (RULES h(s(x), y) -> h(x, s(y)))", DomainKind::N, 1, 2, &[1]);
}

#[test]
fn constants_and_rationals() {
    agree("(RULES a -> b  f(a) -> f(b))", DomainKind::Q, 1, 2, &[1, 2]);
    agree("(VAR x) (RULES f(x) -> g(x))", DomainKind::Q, 1, 2, &[1, 2]);
}

#[test]
fn no_certificate_in_range() {
    // Not terminating at all.
    agree("(VAR x) (RULES f(x) -> f(x))", DomainKind::N, 2, 2, &[1]);
}

#[test]
fn search_is_deterministic() {
    let trs = parse_trs("(VAR x y) (RULES h(f(x), y) -> h(x, g(y))  g(s(x)) -> s(g(x)))").unwrap();
    let cfg = SearchConfig { max_degree: 1, max_coeff: 2, ..SearchConfig::default() };
    let a = search_direct(&trs, DomainKind::N, &cfg).unwrap();
    let b = search_direct(&trs, DomainKind::N, &cfg).unwrap();
    assert_eq!(a, b);
}
