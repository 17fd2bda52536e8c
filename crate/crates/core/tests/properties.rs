use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

use qcert_core::arith::{rat, BiLaurentPoly, BigRational, LaurentPoly, RationalFunction};
use qcert_core::dsl::{parse, render, Expr, Lin};

fn small_rat() -> impl Strategy<Value = BigRational> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| rat(n, d))
}

fn laurent(max_terms: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-4i64..=8, small_rat()), 0..=max_terms).prop_map(LaurentPoly::from_terms)
}

fn nonzero_laurent(max_terms: usize) -> impl Strategy<Value = LaurentPoly> {
    laurent(max_terms).prop_filter("nonzero", |p| !p.is_zero())
}

fn bivariate() -> impl Strategy<Value = BiLaurentPoly> {
    prop::collection::vec(((-2i64..=2, -4i64..=6), small_rat()), 0..=6).prop_map(BiLaurentPoly::from_terms)
}

fn point() -> impl Strategy<Value = BigRational> {
    (-9i64..=9, 1i64..=7).prop_filter("nonzero", |(n, _)| *n != 0).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn divrem_reconstructs(p in laurent(7), d in nonzero_laurent(4)) {
        let (q, r) = p.divrem(&d).unwrap();
        prop_assert_eq!(&(&q * &d) + &r, p.clone());
        if let (Some((lo, hi)), Some((dlo, dhi))) = (r.degree_span(), d.degree_span()) {
            // remainder degree below the divisor's, relative to the shifts
            let plo = p.min_exp().unwrap();
            prop_assert!(lo >= plo && hi - plo < dhi - dlo);
        }
    }

    #[test]
    fn gcd_divides_and_is_greatest(c in nonzero_laurent(3), x in nonzero_laurent(4), y in nonzero_laurent(4)) {
        let p = &c * &x;
        let q = &c * &y;
        let g = p.gcd(&q).unwrap();
        prop_assert!(p.divisible_by(&g).unwrap());
        prop_assert!(q.divisible_by(&g).unwrap());
        prop_assert!(g.divisible_by(&c).unwrap());
        prop_assert_eq!(g.min_exp(), Some(0));
    }

    #[test]
    fn reduction_cancels_common_factors(a in laurent(5), b in nonzero_laurent(4), c in nonzero_laurent(3)) {
        let plain = RationalFunction::new(a.clone(), b.clone()).unwrap();
        let scaled = RationalFunction::new(&a * &c, &b * &c).unwrap();
        prop_assert_eq!(plain.num(), scaled.num());
        prop_assert_eq!(plain.den(), scaled.den());
    }

    #[test]
    fn substitution_is_a_morphism(p in laurent(5), q in laurent(5), m in prop::sample::select(vec![-3i64, -1, 1, 2, 4])) {
        let sp = p.substitute_qpow(m).unwrap();
        prop_assert_eq!(sp.substitute_qpow(1).unwrap(), sp.clone());
        prop_assert_eq!((&p * &q).substitute_qpow(m).unwrap(), &sp * &q.substitute_qpow(m).unwrap());
    }

    #[test]
    fn specialization_is_a_morphism(x in bivariate(), y in bivariate(), e in -5i64..=5) {
        prop_assert_eq!((&x * &y).specialize_a(e), &x.specialize_a(e) * &y.specialize_a(e));
        prop_assert_eq!((&x + &y).specialize_a(e), &x.specialize_a(e) + &y.specialize_a(e));
    }

    #[test]
    fn evaluation_is_multiplicative(p in laurent(5), q in laurent(5), xs in prop::collection::vec(point(), 20)) {
        let pq = &p * &q;
        for x in &xs {
            prop_assert_eq!(pq.evaluate(x).unwrap(), p.evaluate(x).unwrap() * q.evaluate(x).unwrap());
        }
    }

    #[test]
    fn rational_field_operations(a in laurent(4), b in nonzero_laurent(3), c in laurent(4), d in nonzero_laurent(3), x in point()) {
        let f = RationalFunction::new(a, b).unwrap();
        let g = RationalFunction::new(c, d).unwrap();
        let (Ok(fx), Ok(gx)) = (f.evaluate(&x), g.evaluate(&x)) else { return Ok(()) };
        prop_assert_eq!((&f + &g).evaluate(&x).unwrap(), &fx + &gx);
        prop_assert_eq!((&f * &g).evaluate(&x).unwrap(), &fx * &gx);
        prop_assert_eq!(&(&f - &g) + &g, f);
    }
}

fn dsl_text() -> impl Strategy<Value = String> {
    let piece = prop::sample::select(vec![
        "q", "n", "k", "1", "23", "3/4", "+", "-", "*", "/", "^", "(", ")", ",", ";", " ", "qint", "poch", "pochp",
        "qbinom", "cyc", "cyc2", "sum", "foo", "$", "é",
    ]);
    prop::collection::vec(piece, 0..30).prop_map(|v| v.concat())
}

fn lin() -> impl Strategy<Value = Lin> {
    (-9i64..=9, prop::collection::btree_map(prop::sample::select(vec!["k", "n", "m"]), -3i64..=3, 0..=2)).prop_map(
        |(c, t)| Lin {
            constant: c,
            terms: t.into_iter().filter(|(_, v)| *v != 0).map(|(k, v)| (k.to_string(), v)).collect(),
        },
    )
}

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0u32..100).prop_map(|n| Expr::Int(BigInt::from(n))),
        (0u32..50, 1u32..9).prop_map(|(n, d)| Expr::Rat(BigInt::from(n), BigInt::from(d))),
        prop::sample::select(vec!["k", "n", "x"]).prop_map(|v| Expr::Var(v.to_string())),
        lin().prop_map(Expr::QPow),
        (lin(), lin()).prop_map(|(n, base)| Expr::QInt { n, base }),
        (lin(), lin(), lin()).prop_map(|(s, step, count)| Expr::Poch { s, step, count }),
        (lin(), lin(), lin(), lin()).prop_map(|(sign, s, step, count)| Expr::PochP { sign, s, step, count }),
        (lin(), lin(), lin()).prop_map(|(n, k, base)| Expr::QBinom { n, k, base }),
        lin().prop_map(Expr::Cyc),
        lin().prop_map(Expr::Cyc2),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|x| Expr::Neg(Box::new(x))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Div(Box::new(a), Box::new(b))),
            (inner.clone(), lin()).prop_map(|(a, l)| Expr::Pow(Box::new(a), l)),
            (lin(), lin(), inner).prop_map(|(lo, hi, b)| Expr::Sum { var: "j".into(), lo, hi, body: Box::new(b) }),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn parse_never_panics_and_positions_errors(text in dsl_text()) {
        match parse(&text) {
            Ok(e) => prop_assert_eq!(parse(&render(&e)).unwrap(), e),
            Err(err) => {
                if let Some(pos) = err.position() {
                    prop_assert!(pos >= 1 && pos <= text.len() + 1, "{} in {:?}", pos, text);
                }
            }
        }
    }

    #[test]
    fn render_round_trips(e in expr()) {
        let text = render(&e);
        let back = parse(&text);
        prop_assert!(back.is_ok(), "{} -> {:?}", text, back);
        prop_assert_eq!(back.unwrap(), e);
    }
}

#[test]
fn zero_is_not_a_divisor() {
    assert!(LaurentPoly::one().divrem(&LaurentPoly::zero()).is_err());
    assert!(RationalFunction::new(LaurentPoly::one(), LaurentPoly::zero()).is_err());
    assert!(BigRational::zero().is_integer());
}
