//! Randomized field-axiom checks for the rational-function scalars.

use hopfint::scalars::{Poly, RatFunc, Rational};
use proptest::prelude::*;

fn rational(n: i64) -> Rational {
    n.to_string().parse().unwrap()
}

fn poly() -> impl Strategy<Value = Poly> {
    proptest::collection::vec(-4i64..=4, 0..4)
        .prop_map(|cs| Poly::from_coeffs(cs.into_iter().map(rational).collect()))
}

fn nonzero_poly() -> impl Strategy<Value = Poly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (poly(), nonzero_poly()).prop_map(|(n, d)| RatFunc::normalize(n, d).unwrap())
}

fn nonzero_ratfunc() -> impl Strategy<Value = RatFunc> {
    ratfunc().prop_filter("nonzero", |r| !r.is_zero())
}

proptest! {
    #[test]
    fn addition_commutes(a in ratfunc(), b in ratfunc()) {
        prop_assert_eq!(&a + &b, &b + &a);
    }

    #[test]
    fn addition_associates(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    }

    #[test]
    fn zero_is_additive_identity(a in ratfunc()) {
        prop_assert_eq!(&a + &RatFunc::zero(), a.clone());
        prop_assert_eq!(&a + &(-&a), RatFunc::zero());
    }

    #[test]
    fn multiplication_commutes(a in ratfunc(), b in ratfunc()) {
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn multiplication_associates(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn one_is_multiplicative_identity(a in ratfunc()) {
        prop_assert_eq!(&a * &RatFunc::one(), a.clone());
    }

    #[test]
    fn multiplication_distributes(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn nonzero_elements_invert(a in nonzero_ratfunc()) {
        prop_assert_eq!(&a * &a.inv().unwrap(), RatFunc::one());
    }

    #[test]
    fn division_undoes_multiplication(a in ratfunc(), b in nonzero_ratfunc()) {
        prop_assert_eq!(&a.div(&b).unwrap() * &b, a.clone());
    }

    #[test]
    fn q_powers_add(m in -5i64..=5, n in -5i64..=5) {
        prop_assert_eq!(&RatFunc::q_pow(m) * &RatFunc::q_pow(n), RatFunc::q_pow(m + n));
    }

    #[test]
    fn evaluation_is_a_ring_map(a in ratfunc(), b in ratfunc(), q0 in 2i64..=7) {
        let q0 = rational(q0);
        // skip points where a denominator vanishes
        if let (Ok(va), Ok(vb)) = (a.eval(&q0), b.eval(&q0)) {
            prop_assert_eq!((&a + &b).eval(&q0).unwrap(), &va + &vb);
            prop_assert_eq!((&a * &b).eval(&q0).unwrap(), &va * &vb);
        }
    }

    #[test]
    fn normalization_is_canonical(n in poly(), d in nonzero_poly(), s in nonzero_poly()) {
        // common factors never change the represented function
        let plain = RatFunc::normalize(n.clone(), d.clone()).unwrap();
        let scaled = RatFunc::normalize(&n * &s, &d * &s).unwrap();
        prop_assert_eq!(plain, scaled);
    }
}
