use gauge_core::{ConvexCut, ExtendedValue, Value};
use num_rational::Rational64;
use proptest::prelude::*;

fn value(rank: usize) -> impl Strategy<Value = Value> {
    prop::collection::vec((-12i64..12, 1i64..5), rank)
        .prop_map(|c| Value::new(c.into_iter().map(|(n, d)| Rational64::new(n, d)).collect()))
}

proptest! {
    #[test]
    fn order_is_total_and_antisymmetric(a in value(3), b in value(3)) {
        let (ab, ba) = (a.cmp(&b), b.cmp(&a));
        prop_assert_eq!(ab, ba.reverse());
        prop_assert_eq!(ab == std::cmp::Ordering::Equal, a == b);
    }

    #[test]
    fn last_coordinate_dominates(a in value(2), b in value(2)) {
        if a.coords()[1] != b.coords()[1] {
            prop_assert_eq!(a.cmp(&b), a.coords()[1].cmp(&b.coords()[1]));
        }
    }

    #[test]
    fn translation_preserves_order(a in value(3), b in value(3), c in value(3)) {
        prop_assert_eq!(a.cmp(&b), (&a + &c).cmp(&(&b + &c)));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        prop_assert!((&a + &(-&a)).is_zero());
    }

    #[test]
    fn split_and_join_round_trip(a in value(3), k in 0usize..=3) {
        let (coarse, fine) = a.split(ConvexCut(k));
        prop_assert_eq!(coarse.rank() + fine.rank(), 3);
        prop_assert_eq!(Value::join(&fine, &coarse), a.clone());
        prop_assert_eq!(coarse, a.coarsen(k));
        prop_assert_eq!(fine, a.fine(k));
    }

    #[test]
    fn coarsening_is_additive_and_monotone(a in value(3), b in value(3), k in 0usize..=3) {
        prop_assert_eq!((&a + &b).coarsen(k), &a.coarsen(k) + &b.coarsen(k));
        if a <= b {
            prop_assert!(a.coarsen(k) <= b.coarsen(k));
        }
    }

    #[test]
    fn coset_keys_are_reduced_and_idempotent(a in value(2), shift in prop::collection::vec(-5i64..5, 2)) {
        let key = a.coset_key();
        prop_assert_eq!(key.coset_key(), key.clone());
        prop_assert!(key.coords().iter().all(|c| *c >= Rational64::from_integer(0) && *c < Rational64::from_integer(1)));
        let moved = &a + &Value::from_ints(&shift);
        prop_assert_eq!(moved.coset_key(), key);
    }

    #[test]
    fn torsion_order_clears_denominators(a in value(3)) {
        let n = a.torsion_order();
        prop_assert!(n >= 1);
        prop_assert!(a.scale(Rational64::from_integer(n)).is_lattice());
    }

    #[test]
    fn infinity_is_above_everything(a in value(2)) {
        prop_assert!(ExtendedValue::Finite(a.clone()) < ExtendedValue::Infinity);
        prop_assert_eq!(ExtendedValue::Infinity.add_value(&a), ExtendedValue::Infinity);
    }
}
