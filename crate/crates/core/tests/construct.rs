use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use factoridiv::construct::{
    construct_binomial_power, construct_chebyshev, construct_cubic, construct_cyclotomic, construct_quadratic,
    construct_quartic_biquadratic, construct_quartic_cubic_linear, schinzel_pieces, ConstructBudget, ConstructError,
    Mode, SchinzelError, WitnessCertificate,
};
use factoridiv::intpoly::IntPoly;

fn poly(c: &[i64]) -> IntPoly {
    IntPoly::from_i64(c)
}

fn check_invariants(c: &WitnessCertificate) {
    let product: BigInt = c.factors.iter().product();
    assert_eq!(product, c.poly.evaluate(&c.n).magnitude().clone().into(), "{} n={}", c.class, c.n);
    if c.mode == Mode::Distinct {
        let mut sorted = c.factors.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), c.factors.len(), "duplicate factor in a distinct certificate");
        assert!(c.factors.iter().all(|f| f <= &c.n));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn schinzel_identity_expands(c in prop::collection::vec(1i64..=9, 4), k in 1i64..=5) {
        let f = poly(&c);
        match schinzel_pieces(&f, &BigInt::from(k)) {
            Ok(pc) => {
                let lhs = f.compose(&pc.g);
                let rhs = &pc.f1 * &pc.f2;
                for (i, coeff) in lhs.coeffs().iter().enumerate() {
                    let r = BigRational::from_integer(rhs.coeff(i)) * &pc.content;
                    prop_assert_eq!(BigRational::from_integer(coeff.clone()), r);
                }
                prop_assert_eq!(lhs.deg(), rhs.deg());
            }
            Err(SchinzelError::Degenerate(_)) => {}
            Err(e) => prop_assert!(false, "unexpected {}", e),
        }
    }

    #[test]
    fn quadratic_chain_holds(c0 in 1i64..=6, c1 in 0i64..=6, c2 in 1i64..=4) {
        let p = poly(&[c0, c1, c2]);
        let certs = match construct_quadratic(&p, 4, &ConstructBudget::default()) {
            Ok(c) => c,
            Err(e) => e.partial().to_vec(),
        };
        for c in &certs {
            check_invariants(c);
            let q: BigInt = c.params["q"].parse().unwrap();
            let m: BigInt = c.params["m"].parse().unwrap();
            let pm = p.evaluate(&m);
            let qm = (&c.factors[0] * &c.factors[1]).clone();
            prop_assert_eq!(&c.factors[0], &q);
            prop_assert_eq!(&c.factors[2], &pm);
            prop_assert!(BigInt::one() < q && q < c.factors[1] && c.factors[1] < pm && pm < c.n);
            prop_assert_eq!(&c.n, &(&pm + &m));
            prop_assert!((qm % &q).is_zero());
        }
    }
}

#[test]
fn every_class_emits_valid_certificates() {
    let b = ConstructBudget::default();
    let one = BigRational::one();
    let s: Vec<BigInt> = (2..=4).map(BigInt::from).collect();
    let mut all = Vec::new();
    all.extend(construct_quadratic(&poly(&[1, 0, 1]), 10, &b).unwrap());
    all.extend(construct_cubic(&poly(&[4, 2, 1, 1]), 2, &b).unwrap());
    all.extend(construct_quartic_cubic_linear(&poly(&[4, 2, 1, 1]), &poly(&[1, 2]), 1, &b).unwrap());
    all.extend(construct_quartic_biquadratic(&poly(&[1, 1, 1]), &poly(&[3, 2, 1]), 1, &b).unwrap());
    for m in 1..=3 {
        all.extend(construct_binomial_power(m, &s, &one, &b).unwrap());
        if m < 3 {
            all.extend(construct_cyclotomic(m, &s, &one, &b).unwrap());
        }
    }
    all.extend(construct_chebyshev(&[1, 2], &s, &one, &b).unwrap());
    assert!(all.len() > 20);
    for c in &all {
        check_invariants(c);
    }
}

#[test]
fn cubic_factors_stay_below_four_fifths() {
    let certs = construct_cubic(&poly(&[4, 2, 1, 1]), 3, &ConstructBudget::default()).unwrap();
    for c in &certs {
        assert!(c.n > BigInt::from(1_000_000));
        let max = c.factors.iter().max().unwrap();
        assert!(max.pow(5) < c.n.pow(4));
    }
}

#[test]
fn quartic_linear_factor_is_divisible_by_p() {
    let linear = poly(&[1, 1]);
    let certs =
        construct_quartic_cubic_linear(&poly(&[4, 2, 1, 1]), &linear, 2, &ConstructBudget::default()).unwrap();
    for c in &certs {
        let p: BigInt = c.params["p"].parse().unwrap();
        assert!((linear.evaluate(&c.n) % &p).is_zero());
        assert!(c.factors.contains(&p));
    }
}

#[test]
fn budget_errors_keep_partial_output() {
    let b = ConstructBudget { max_candidates: 3, ..Default::default() };
    match construct_quadratic(&poly(&[1, 0, 1]), 10, &b) {
        Err(ConstructError::Budget(r)) => {
            assert_eq!(r.stage, "quadratic");
            assert!(!r.partial.is_empty());
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn invalid_inputs_are_rejected() {
    let b = ConstructBudget::default();
    let one = BigRational::one();
    assert!(matches!(construct_cubic(&poly(&[1, 1, 1]), 1, &b), Err(ConstructError::InvalidInput(_))));
    assert!(matches!(
        construct_quartic_biquadratic(&poly(&[1, 1, 1]), &poly(&[1, 1]), 1, &b),
        Err(ConstructError::InvalidInput(_))
    ));
    assert!(matches!(construct_binomial_power(0, &[BigInt::from(2)], &one, &b), Err(ConstructError::InvalidInput(_))));
    assert!(matches!(construct_cyclotomic(2, &[BigInt::from(1)], &one, &b), Err(ConstructError::InvalidInput(_))));
    assert!(matches!(construct_chebyshev(&[], &[BigInt::from(2)], &one, &b), Err(ConstructError::InvalidInput(_))));
}
