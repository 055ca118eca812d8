use num_bigint::{BigInt, RandBigInt};
use num_rational::BigRational;
use num_traits::{One, Signed};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use factoridiv::numtheory::{
    factorize, is_perfect_square, is_prime_u64, is_probable_prime, mertens_select, nu_p_factorial, FactorBudget,
};

#[test]
fn factorize_round_trip_small() {
    let budget = FactorBudget::default();
    for m in (-1_000_000i64..=1_000_000).filter(|&m| m != 0) {
        let f = factorize(&BigInt::from(m), &budget).unwrap();
        assert_eq!(f.reassemble(), BigInt::from(m));
        for (p, e) in &f.factors {
            assert!(*e >= 1);
            assert!(is_prime_u64(u64::try_from(p).unwrap()), "{p} in factorization of {m}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn factorize_round_trip_u64(m in 2u64..) {
        let f = factorize(&BigInt::from(m), &FactorBudget::default()).unwrap();
        prop_assert_eq!(f.reassemble(), BigInt::from(m));
        for (p, _) in &f.factors {
            prop_assert!(is_probable_prime(p));
        }
    }

    #[test]
    fn mertens_selection_is_minimal(min_prime in 2u64..20, num in 1i64..=5, den in 2i64..=4, rnum in 10i64..=12) {
        let target = BigRational::new(num.into(), den.into());
        let ratio = BigRational::new(rnum.into(), 10.into());
        let sel = mertens_select(min_prime, &target, &ratio).unwrap();
        prop_assert!(sel.product_value >= &ratio * &target);
        let last = *sel.primes.last().unwrap();
        let without = &sel.product_value * BigRational::new((last - 1).into(), last.into());
        prop_assert!(sel.primes.len() == 1 || without < &ratio * &target);
    }
}

#[test]
fn legendre_against_factorial() {
    let primes = factoridiv::numtheory::sieve(50);
    let mut fact = BigInt::one();
    for n in 1..=500u64 {
        fact *= n;
        for &p in &primes {
            let nu = u32::try_from(nu_p_factorial(&p.into(), &n.into()).unwrap()).unwrap();
            let pk = BigInt::from(p).pow(nu);
            assert!((&fact % &pk) == BigInt::from(0));
            assert!((&fact % (&pk * p)) != BigInt::from(0));
        }
    }
}

#[test]
fn perfect_squares_small() {
    let mut r = 0u64;
    for m in 0..=1_000_000u64 {
        while (r + 1) * (r + 1) <= m {
            r += 1;
        }
        assert_eq!(is_perfect_square(&BigInt::from(m)), r * r == m, "{m}");
    }
    assert!(!is_perfect_square(&BigInt::from(-4)));
}

#[test]
fn perfect_squares_large() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let k = rng.gen_biguint(128);
        let k = BigInt::from(k);
        let sq = &k * &k;
        assert!(is_perfect_square(&sq));
        assert!(sq.bits() <= 256);
        if k.is_positive() {
            assert!(!is_perfect_square(&(&sq + 1u32)));
        }
    }
}
