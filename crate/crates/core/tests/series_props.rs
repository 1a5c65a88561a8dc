use gauge_core::{CoefficientField, ExtendedValue, Precision, Series, Value};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

const Q: CoefficientField = CoefficientField::Rationals;

fn series() -> impl Strategy<Value = Series> {
    prop::collection::vec((-9i64..10, -3i64..4, -3i64..4), 1..5).prop_map(|terms| {
        let terms: Vec<_> = terms
            .into_iter()
            .map(|(c, i, j)| (vec![i, j], BigRational::from_integer(BigInt::from(if c == 0 { 1 } else { c }))))
            .collect();
        Series::from_terms(Q, 2, &terms)
    })
}

fn nonzero() -> impl Strategy<Value = Series> {
    series().prop_filter("nonzero", |s| !s.is_zero())
}

fn finite(v: ExtendedValue) -> Value {
    v.finite().cloned().expect("finite valuation")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn valuation_is_ultrametric(a in series(), b in series()) {
        let (va, vb, vs) = (a.valuation().unwrap(), b.valuation().unwrap(), (&a + &b).valuation().unwrap());
        prop_assert!(vs >= va.clone().min(vb.clone()));
        if va != vb {
            prop_assert_eq!(vs, va.min(vb));
        }
    }

    #[test]
    fn valuation_is_multiplicative(a in series(), b in series()) {
        let prod = (&a * &b).valuation().unwrap();
        prop_assert_eq!(prod, a.valuation().unwrap().add(&b.valuation().unwrap()));
    }

    #[test]
    fn inverse_negates_valuation_and_is_a_unit(a in nonzero()) {
        let p = Precision::uniform(2, 6);
        let inv = a.inv(&p).unwrap();
        let va = finite(a.valuation().unwrap());
        prop_assert_eq!(finite(inv.valuation().unwrap()), -&va);
        let err = &(&a * &inv) - &Series::one(Q, 2);
        match err.valuation() {
            Ok(ExtendedValue::Finite(v)) => prop_assert!(v > Value::zero(2)),
            Ok(ExtendedValue::Infinity) | Err(_) => {}
        }
    }

    #[test]
    fn squares_have_exact_roots(a in nonzero()) {
        let sq = &a * &a;
        let r = sq.exact_sqrt().expect("a square has a root");
        prop_assert!(r == a || r == -&a);
    }

    #[test]
    fn expanded_root_has_half_the_valuation(a in nonzero()) {
        let sq = &a * &a;
        let r = sq.sqrt(&Precision::uniform(2, 6)).unwrap();
        prop_assert_eq!(finite(r.valuation().unwrap()), finite(a.valuation().unwrap()));
    }

    #[test]
    fn leading_term_carries_the_valuation(a in nonzero()) {
        let (v, c) = a.leading_coefficient().unwrap().expect("nonzero series");
        prop_assert_eq!(ExtendedValue::Finite(v), a.valuation().unwrap());
        prop_assert!(c != BigRational::from_integer(BigInt::from(0)));
    }
}
