//! Property tests for the algebraic substrate: canonical forms, field laws,
//! substitution homomorphisms, and the core bimould involutions.

use proptest::prelude::*;

use flexion_core::bimould::{mu, random_bimould, unary, unary_chain, Backend, MuClass, UnaryOp};
use flexion_core::ratfun::{
    parse_ratfun, poly_gcd, ratfun_string, LinearForm, Monomial, Polynomial, RatFun,
};
use flexion_core::scalar::Rational;

fn rational() -> impl Strategy<Value = Rational> {
    (-2000i64..2000, 1i64..60).prop_map(|(n, d)| Rational::from_frac(n, d))
}

fn monomial() -> impl Strategy<Value = Monomial> {
    proptest::collection::vec((0usize..6, 1u32..3), 0..4).prop_map(Monomial::from_pairs)
}

fn polynomial() -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec((monomial(), -9i64..10), 1..5).prop_map(|terms| {
        let mut p = Polynomial::zero();
        for (m, c) in terms {
            p.add_term(m, Rational::from_int(c));
        }
        p
    })
}

fn ratfun() -> impl Strategy<Value = RatFun> {
    (polynomial(), polynomial())
        .prop_filter("nonzero denominator", |(_, d)| !d.is_zero())
        .prop_map(|(n, d)| RatFun::new(n, d).unwrap())
}

fn linear_forms() -> impl Strategy<Value = Vec<LinearForm>> {
    proptest::collection::vec(proptest::collection::vec(-2i64..3, 6), 6).prop_map(|rows| {
        rows.into_iter()
            .map(|row| {
                LinearForm::from_pairs(row.into_iter().enumerate().collect())
            })
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_field_laws(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.sub(&a), Rational::zero());
        if !b.is_zero() {
            prop_assert_eq!(a.div(&b).unwrap().mul(&b), a.clone());
        }
    }

    #[test]
    fn rational_normalization_is_canonical(n in -500i64..500, d in 1i64..40, k in 1i64..20) {
        prop_assert_eq!(Rational::from_frac(n * k, d * k), Rational::from_frac(n, d));
    }

    #[test]
    fn monomial_division_inverts_multiplication(a in monomial(), b in monomial()) {
        let prod = a.mul(&b);
        prop_assert_eq!(prod.div(&b), Some(a));
        prop_assert_eq!(prod.div(&a), Some(b));
        // The order is multiplicative: a*c vs b*c compare like a vs b.
        let c = Monomial::var(3);
        prop_assert_eq!(a.cmp(&b), a.mul(&c).cmp(&b.mul(&c)));
    }

    #[test]
    fn ratfun_normal_form_is_unique(f in ratfun(), g in ratfun()) {
        prop_assert!(f.sub(&f).is_zero());
        prop_assert_eq!(f.add(&g), g.add(&f));
        prop_assert_eq!(f.add(&g).sub(&g), f.clone());
        if !g.is_zero() {
            prop_assert_eq!(f.div(&g).unwrap().mul(&g), f.clone());
        }
    }

    #[test]
    fn ratfun_text_roundtrips(f in ratfun()) {
        let printed = ratfun_string(&f);
        prop_assert_eq!(parse_ratfun(&printed).unwrap(), f);
    }

    #[test]
    fn gcd_contains_known_common_factor(p in polynomial(), q in polynomial(), m in polynomial()) {
        let pm = p.mul(&m);
        let qm = q.mul(&m);
        if !pm.is_zero() && !qm.is_zero() {
            let g = poly_gcd(&pm, &qm);
            // The primitive part of m divides the gcd, and the gcd divides
            // both products.
            use flexion_core::ratfun::{integer_primitive, poly_divexact};
            prop_assert!(poly_divexact(&g, &integer_primitive(&m)).is_some());
            prop_assert!(poly_divexact(&pm, &g).is_some());
            prop_assert!(poly_divexact(&qm, &g).is_some());
        }
    }

    #[test]
    fn substitution_is_a_ring_homomorphism(p in polynomial(), q in polynomial(), forms in linear_forms()) {
        let map = |poly: &Polynomial| poly.substitute_linear(&|code| forms[code].clone());
        prop_assert_eq!(map(&p.add(&q)), map(&p).add(&map(&q)));
        prop_assert_eq!(map(&p.mul(&q)), map(&p).mul(&map(&q)));
    }

    #[test]
    fn bimould_involutions_hold_on_random_inputs(seed in any::<u64>()) {
        let a = random_bimould(seed, 3, MuClass::General, 2, Backend::Exact);
        for ops in [
            [UnaryOp::Swap, UnaryOp::Swap],
            [UnaryOp::Anti, UnaryOp::Anti],
            [UnaryOp::Neg, UnaryOp::Neg],
        ] {
            let back = unary_chain(&a, &ops).unwrap();
            for r in 0..=3 {
                prop_assert_eq!(back.comp(r).as_ratfun(), a.comp(r).as_ratfun());
            }
        }
    }

    #[test]
    fn mu_is_associative_and_unital(seed in any::<u64>()) {
        let a = random_bimould(seed ^ 1, 3, MuClass::General, 1, Backend::Exact);
        let b = random_bimould(seed ^ 2, 3, MuClass::General, 1, Backend::Exact);
        let c = random_bimould(seed ^ 3, 3, MuClass::General, 1, Backend::Exact);
        let left = mu(&mu(&a, &b), &c);
        let right = mu(&a, &mu(&b, &c));
        for r in 0..=3 {
            prop_assert_eq!(left.comp(r).as_ratfun(), right.comp(r).as_ratfun());
        }
        let one = flexion_core::bimould::Bimould::one(3, Backend::Exact);
        let prod = mu(&a, &one);
        for r in 0..=3 {
            prop_assert_eq!(prod.comp(r).as_ratfun(), a.comp(r).as_ratfun());
        }
    }

    #[test]
    fn anti_exchanges_mu_factors(seed in any::<u64>()) {
        let a = random_bimould(seed ^ 5, 3, MuClass::General, 1, Backend::Exact);
        let b = random_bimould(seed ^ 6, 3, MuClass::General, 1, Backend::Exact);
        let lhs = unary(&mu(&a, &b), UnaryOp::Anti).unwrap();
        let rhs = mu(&unary(&b, UnaryOp::Anti).unwrap(), &unary(&a, UnaryOp::Anti).unwrap());
        for r in 0..=3 {
            prop_assert_eq!(lhs.comp(r).as_ratfun(), rhs.comp(r).as_ratfun());
        }
    }
}
