use num_bigint::BigInt;
use proptest::prelude::*;

use factoridiv::intpoly::IntPoly;
use factoridiv::numtheory::{largest_prime_factor, FactorBudget};
use factoridiv::scan::{scan, Theta};

fn is_hit(f: &IntPoly, n: u64, theta: Theta) -> bool {
    let v = f.evaluate(&BigInt::from(n));
    if v.magnitude() < &2u32.into() {
        return false;
    }
    let p = largest_prime_factor(&v, &FactorBudget::default()).unwrap();
    p.pow(theta.k) < BigInt::from(n).pow(theta.j)
}

#[test]
fn hits_match_full_factorization() {
    let fb = FactorBudget::default();
    for (coeffs, theta) in [(vec![1, 1, 1], Theta::new(3, 5).unwrap()), (vec![2, 0, 0, 1], Theta::new(1, 1).unwrap())] {
        let f = IntPoly::from_i64(&coeffs);
        let r = scan(&f, 1, 10_000, theta, &fb, 2).unwrap();
        let oracle: Vec<u64> = (1..=10_000).filter(|&n| is_hit(&f, n, theta)).collect();
        let got: Vec<u64> = r.hits.iter().map(|h| h.n).collect();
        assert_eq!(got, oracle, "{f}");
        for h in &r.hits {
            assert_eq!(h.p_plus, largest_prime_factor(&h.value, &fb).unwrap());
            assert!((&h.value % &h.p_plus) == BigInt::from(0));
        }
    }
}

#[test]
fn larger_theta_keeps_every_hit() {
    let fb = FactorBudget::default();
    let f = IntPoly::from_i64(&[1, 0, 1]);
    let thetas = ["1/2", "14/25", "3/5", "3/4", "1", "3/2"].map(|t| t.parse::<Theta>().unwrap());
    let sets: Vec<Vec<u64>> = thetas
        .iter()
        .map(|&t| scan(&f, 1, 5000, t, &fb, 1).unwrap().hits.iter().map(|h| h.n).collect())
        .collect();
    for w in sets.windows(2) {
        assert!(w[0].iter().all(|n| w[1].contains(n)));
        assert!(w[0].len() <= w[1].len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn early_decisions_agree_with_full_factorization(n in 2u64..1_000_000_000, j in 1u32..=7, k in 2u32..=8) {
        prop_assume!(j <= 2 * k);
        let f = IntPoly::from_i64(&[1, 0, 1]);
        let theta = Theta::new(j, k).unwrap();
        let r = scan(&f, n, n, theta, &FactorBudget::default(), 1).unwrap();
        prop_assert!(r.summary.unresolved.is_empty());
        prop_assert_eq!(r.hits.len() == 1, is_hit(&f, n, theta));
    }
}
