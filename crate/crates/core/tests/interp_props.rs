use std::collections::BTreeMap;

use polyterm::interp::{CheckReport, Interp};
use polyterm::numeric::{DomainTag, Rat, Scalar};
use polyterm::poly::{Monomial, Poly, Var};
use polyterm::trs::{Rule, Term, Trs};
use proptest::prelude::*;

fn x(i: usize) -> Var {
    Var::from(format!("x{i}").as_str())
}

/// Terms over `f/1`, `g/2`, `a/0` and the given variables.
fn term(vars: &'static [&'static str]) -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![prop::sample::select(vars).prop_map(Term::var), Just(Term::constant("a"))];
    leaf.prop_recursive(4, 16, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|t| Term::app("f", vec![t])),
            (inner.clone(), inner).prop_map(|(l, r)| Term::app("g", vec![l, r])),
        ]
    })
}

fn plug(c: &Term, hole: &str, t: &Term) -> Term {
    match c {
        Term::Var(v) if &**v == hole => t.clone(),
        Term::Var(_) => c.clone(),
        Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| plug(a, hole, t)).collect()),
    }
}

/// Coefficients for `f(x1) = c0 + c1*x1 + c2*x1^2`, `g(x1, x2) = d0 + d1*x1 + d2*x2`, `a = e`.
#[derive(Debug, Clone)]
struct Shape {
    f: [Scalar; 3],
    g: [Scalar; 3],
    a: Scalar,
}

fn shape(coeff: impl Strategy<Value = Scalar> + Clone + 'static, linear: bool) -> impl Strategy<Value = Shape> {
    let c = coeff.boxed();
    let square = if linear { Just(Scalar::zero()).boxed() } else { c.clone() };
    (
        [c.clone(), c.clone(), square],
        [c.clone(), c.clone(), c.clone()],
        c,
    )
        .prop_map(|(f, g, a)| Shape { f, g, a })
}

fn build(s: &Shape, domain: DomainTag) -> Option<Interp> {
    let mut i = Interp::new(domain);
    let f = Poly::univariate(&x(1), &s.f);
    let g = Poly::from_terms([
        (s.g[0].clone(), Monomial::one()),
        (s.g[1].clone(), Monomial::var(x(1))),
        (s.g[2].clone(), Monomial::var(x(2))),
    ]);
    i.insert("f", 1, f).ok()?;
    i.insert("g", 2, g).ok()?;
    i.insert("a", 0, Poly::constant(s.a.clone())).ok()?;
    Some(i)
}

fn rules() -> impl Strategy<Value = Trs> {
    prop::collection::vec((term(&["x", "y"]), term(&["x", "y"])), 1..4).prop_filter_map("valid system", |pairs| {
        let rules: Vec<Rule> = pairs.into_iter().map(|(l, r)| Rule::new(l, r)).collect();
        Trs::new(rules).ok()
    })
}

fn labels(r: &CheckReport) -> Vec<(String, &'static str)> {
    r.conditions().into_iter().map(|(site, v)| (site.to_string(), v.label())).collect()
}

fn nat() -> impl Strategy<Value = Scalar> + Clone {
    (0i64..=3).prop_map(Scalar::int)
}

fn rational() -> impl Strategy<Value = Scalar> + Clone {
    (-2i64..=4, 1i64..=2).prop_map(|(p, q)| Scalar::ratio(p, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn eval_term_is_compositional(s in shape(nat(), false), c in term(&["x", "z"]), t in term(&["x", "y"])) {
        let i = build(&s, DomainTag::N).unwrap();
        let whole = i.eval_term(&plug(&c, "z", &t)).unwrap();
        let outer = i.eval_term(&c).unwrap();
        let inner = i.eval_term(&t).unwrap();
        let composed = outer.substitute(&BTreeMap::from([(Var::from("z"), inner)]));
        prop_assert_eq!(whole, composed);
    }

    #[test]
    fn q_to_r_lift_keeps_every_verdict(s in shape(rational(), false), trs in rules(), delta in prop_oneof![Just(Rat::new(1, 2).unwrap()), Just(Rat::one())]) {
        let Some(q) = build(&s, DomainTag::q(delta).unwrap()) else { return Ok(()) };
        let r = q.lift_q_to_r().unwrap();
        let rq = q.check_certificate(&trs).unwrap();
        let rr = r.check_certificate(&trs).unwrap();
        prop_assert_eq!(labels(&rq), labels(&rr));
    }

    #[test]
    fn linear_n_to_q_lift_keeps_every_verdict(s in shape(nat(), true), trs in rules()) {
        let n = build(&s, DomainTag::N).unwrap();
        let q = n.lift_linear_n_to_q().unwrap();
        let rn = n.check_certificate(&trs).unwrap();
        let rq = q.check_certificate(&trs).unwrap();
        prop_assert!(!rn.has_unknown() && !rq.has_unknown());
        prop_assert_eq!(labels(&rn), labels(&rq));
    }
}
