use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use factoridiv::intpoly::IntPoly;

fn small_poly(max_deg: usize) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-50i64..=50, 1..=max_deg + 1).prop_map(|c| IntPoly::from_i64(&c))
}

fn nonzero_poly(max_deg: usize) -> impl Strategy<Value = IntPoly> {
    small_poly(max_deg).prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn divide_undoes_multiply(p in small_poly(8), q in nonzero_poly(8)) {
        let prod = &p * &q;
        prop_assert_eq!(prod.exact_divide(&q).unwrap(), Ok(p));
    }

    #[test]
    fn compose_respects_evaluation(f in small_poly(6), g in small_poly(4), x in -20i64..=20) {
        let x = BigInt::from(x);
        prop_assert_eq!(f.compose(&g).evaluate(&x), f.evaluate(&g.evaluate(&x)));
    }

    #[test]
    fn content_split_round_trip(p in nonzero_poly(8)) {
        let cs = p.content_split().unwrap();
        prop_assert_eq!(cs.reassemble(), p.coeffs().iter().cloned().map(num_rational::BigRational::from_integer).collect::<Vec<_>>());
        let g = cs.primitive.coeffs().iter().fold(BigInt::zero(), |a, c| a.gcd(c));
        prop_assert!(g.is_one());
    }

    #[test]
    fn shift_to_positive_is_minimal(mut c in prop::collection::vec(-30i64..=30, 2..=6), lead in 1i64..=5) {
        c.push(lead);
        let p = IntPoly::from_i64(&c);
        let (y, shifted) = p.shift_to_positive().unwrap();
        prop_assert!(shifted.all_positive());
        prop_assert_eq!(&shifted, &p.shift(&y));
        if y.is_positive() {
            let before = p.shift(&(&y - 1));
            prop_assert!(!before.all_positive());
        }
    }

    #[test]
    fn parse_display_round_trip(p in small_poly(8)) {
        let back: IntPoly = p.to_coeff_string().parse().unwrap();
        prop_assert_eq!(back, p);
    }
}
