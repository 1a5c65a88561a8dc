use gauge_core::{Element, Example51, Series};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use std::sync::OnceLock;

fn tower() -> &'static Example51 {
    static E: OnceLock<Example51> = OnceLock::new();
    E.get_or_init(|| Example51::new(Example51::default_gamma()).expect("tower builds"))
}

fn coordinate() -> impl Strategy<Value = Vec<(i64, i64, i64)>> {
    prop::collection::vec((-5i64..6, -2i64..3, -2i64..3), 0..3)
}

fn element() -> impl Strategy<Value = Element> {
    prop::collection::vec(coordinate(), 4).prop_map(|coords| {
        let e = tower();
        coords
            .into_iter()
            .map(|terms| {
                let terms: Vec<_> = terms
                    .into_iter()
                    .filter(|(c, _, _)| *c != 0)
                    .map(|(c, i, j)| (vec![i, j], BigRational::from_integer(BigInt::from(c))))
                    .collect();
                e.d.field.from_series(Series::from_terms(gauge_core::CoefficientField::Rationals, 2, &terms))
            })
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn alpha_is_surmultiplicative(z in element(), w in element()) {
        let e = tower();
        let zw = e.d.mul(&z, &w);
        let lhs = e.alpha.evaluate(&zw).unwrap();
        let rhs = e.alpha.evaluate(&z).unwrap().add(&e.alpha.evaluate(&w).unwrap());
        prop_assert!(lhs >= rhs, "alpha(zw) = {} < {}", lhs, rhs);
    }

    #[test]
    fn alpha_is_ultrametric(z in element(), w in element()) {
        let e = tower();
        let s = e.alpha.evaluate(&e.d.add(&z, &w)).unwrap();
        let m = e.alpha.evaluate(&z).unwrap().min(e.alpha.evaluate(&w).unwrap());
        prop_assert!(s >= m);
    }

    #[test]
    fn both_routes_agree(z in element()) {
        let e = tower();
        prop_assert_eq!(e.alpha.evaluate(&z).unwrap(), e.alpha_via_embedding(&z).unwrap());
    }

    #[test]
    fn beta_is_the_coarsening_of_alpha(z in element()) {
        let e = tower();
        prop_assert_eq!(e.beta.evaluate(&z).unwrap(), e.alpha.evaluate(&z).unwrap().coarsen(1));
    }

    #[test]
    fn beta_is_a_valuation(z in element(), w in element()) {
        let e = tower();
        let lhs = e.beta.evaluate(&e.d.mul(&z, &w)).unwrap();
        prop_assert_eq!(lhs, e.beta.evaluate(&z).unwrap().add(&e.beta.evaluate(&w).unwrap()));
    }

    #[test]
    fn alpha_is_homogeneous_over_the_centre(z in element(), c in coordinate()) {
        let e = tower();
        let terms: Vec<_> = c.into_iter().filter(|(a, _, _)| *a != 0)
            .map(|(a, i, j)| (vec![i, j], BigRational::from_integer(BigInt::from(a)))).collect();
        let s = e.d.field.from_series(Series::from_terms(gauge_core::CoefficientField::Rationals, 2, &terms));
        let lhs = e.alpha.evaluate(&e.d.scale(&s, &z)).unwrap();
        let rhs = e.alpha.handle().valuation(&s).unwrap().add(&e.alpha.evaluate(&z).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}
