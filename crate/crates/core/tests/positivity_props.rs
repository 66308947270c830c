use std::collections::BTreeMap;

use polyterm::numeric::{Carrier, Rat, Scalar};
use polyterm::poly::{Monomial, Poly, Var};
use polyterm::positivity::{nonneg_on, Verdict};
use proptest::prelude::*;

fn v(name: &str) -> Var {
    Var::from(name)
}

/// Polynomials of degree at most 2 in each of `x`, `y`, with a mix of
/// positive and negative coefficients.
fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((-3i64..=3, 0u32..=2, 0u32..=2), 1..6).prop_map(|terms| {
        Poly::from_terms(terms.into_iter().map(|(c, ex, ey)| {
            let powers = [(v("x"), ex), (v("y"), ey)].into_iter().filter(|(_, e)| *e > 0);
            (Scalar::int(c), Monomial::from_powers(powers))
        }))
    })
}

fn carrier() -> impl Strategy<Value = Carrier> {
    prop_oneof![Just(Carrier::N), Just(Carrier::Q0), Just(Carrier::R0)]
}

/// `{0..8}` for `N`, `{0, 1/4, ..., 4}` otherwise.
fn grid(carrier: Carrier) -> Vec<Scalar> {
    match carrier {
        Carrier::N => (0..=8).map(Scalar::int).collect(),
        _ => (0..=16).map(|k| Scalar::ratio(k, 4)).collect(),
    }
}

fn in_carrier(x: &Scalar, carrier: Carrier) -> bool {
    x.is_nonneg() && (carrier != Carrier::N || x.is_integer())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn verdicts_are_sound(p in poly(), carrier in carrier()) {
        match nonneg_on(&p, carrier) {
            Verdict::Proved(_) => {
                let g = grid(carrier);
                for x in &g {
                    for y in &g {
                        let at = BTreeMap::from([(v("x"), x.clone()), (v("y"), y.clone())]);
                        prop_assert!(p.eval(&at).unwrap().is_nonneg(), "proved but p({x}, {y}) < 0 for {p}");
                    }
                }
            }
            Verdict::Disproved { witness, value } => {
                prop_assert!(value.is_negative());
                prop_assert!(witness.values().all(|x| in_carrier(x, carrier)));
                let mut at = witness.clone();
                for x in ["x", "y"] {
                    at.entry(v(x)).or_insert_with(Scalar::zero);
                }
                prop_assert_eq!(p.eval(&at).unwrap(), value);
            }
            Verdict::Unknown => {}
        }
    }

    /// The quadratic closed form against a root check: the sign at 0, the
    /// leading coefficient, and the value at a non-negative vertex.
    #[test]
    fn univariate_quadratics_are_decided_exactly(
        a in (-4i64..=4, 1i64..=4), b in (-4i64..=4, 1i64..=4), c in (-4i64..=4, 1i64..=4),
    ) {
        let r = |(p, q): (i64, i64)| Rat::new(p, q).unwrap();
        let (a, b, c) = (r(a), r(b), r(c));
        prop_assume!(!a.is_zero());
        let p = Poly::univariate("x", &[Scalar::Rat(c.clone()), Scalar::Rat(b.clone()), Scalar::Rat(a.clone())]);
        let f = |x: &Rat| &(&(&a * x) + &b) * x + &c;
        let zero = Rat::zero();
        let vertex = &(-&b) / &(&a * &Rat::from_int(2));
        let expected = f(&zero) >= zero && a > zero && (vertex < zero || f(&vertex) >= zero);
        let verdict = nonneg_on(&p, Carrier::R0);
        prop_assert!(!verdict.is_unknown());
        prop_assert_eq!(verdict.is_proved(), expected);
    }
}
