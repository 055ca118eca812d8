use num_bigint::BigInt;
use num_traits::One;

use factoridiv::intpoly::IntPoly;
use factoridiv::numtheory::divisors_u64;
use factoridiv::specialpoly::{
    chebyshev_monic, chebyshev_t, chebyshev_value, cyclotomic, cyclotomic_mobius, cyclotomic_value, euler_phi, psi,
    psi4d_value,
};

#[test]
fn cyclotomic_product_is_binomial() {
    for n in 1..=200u64 {
        let prod = divisors_u64(n).into_iter().fold(IntPoly::one(), |a, d| &a * &cyclotomic(d));
        assert_eq!(prod, &IntPoly::monomial(BigInt::one(), n as usize) - &IntPoly::one(), "n = {n}");
    }
}

#[test]
fn cyclotomic_degree_is_phi() {
    for n in 1..=500u64 {
        assert_eq!(cyclotomic(n).deg(), Some(euler_phi(n) as usize), "n = {n}");
    }
}

#[test]
fn coefficients_first_leave_unit_range_at_105() {
    for n in 1..=105u64 {
        let a = cyclotomic(n);
        assert_eq!(a, cyclotomic_mobius(n), "two constructions disagree at {n}");
        let small = a.coeffs().iter().all(|c| c.magnitude() <= &1u32.into());
        assert_eq!(small, n != 105, "n = {n}");
    }
    assert!(cyclotomic(105).coeffs().contains(&BigInt::from(-2)));
}

#[test]
fn psi_defining_identity() {
    let x2p1 = IntPoly::from_i64(&[1, 0, 1]);
    for n in 3..=120u64 {
        let p = psi(n).unwrap();
        let h = euler_phi(n) as usize / 2;
        assert_eq!(p.deg(), Some(h));
        // y^h psi(y + 1/y) = sum c_j y^(h-j) (y^2 + 1)^j
        let mut lifted = IntPoly::zero();
        let mut pow = IntPoly::one();
        for j in 0..=h {
            lifted = &lifted + &(&pow.scale(&p.coeff(j)) * &IntPoly::monomial(BigInt::one(), h - j));
            pow = &pow * &x2p1;
        }
        assert_eq!(lifted, cyclotomic(n), "n = {n}");
    }
}

#[test]
fn chebyshev_composition() {
    for m in 0..=12u64 {
        for n in 0..=12u64 {
            assert_eq!(chebyshev_t(m).compose(&chebyshev_t(n)), chebyshev_t(m * n), "T_{m}(T_{n})");
        }
    }
}

#[test]
fn chebyshev_psi_product() {
    for n in 1..=100u64 {
        let prod = divisors_u64(n)
            .into_iter()
            .filter(|d| (n / d) % 2 == 1)
            .fold(IntPoly::one(), |a, d| &a * &psi(4 * d).unwrap());
        assert_eq!(prod, chebyshev_monic(n), "n = {n}");
    }
}

#[test]
fn value_routes_match_polynomials_widely() {
    for s in 1..=6i64 {
        let s = BigInt::from(s);
        for n in 0..=40u64 {
            assert_eq!(chebyshev_value(n, &s), chebyshev_t(n).evaluate(&s));
        }
        for d in 1..=30u64 {
            assert_eq!(psi4d_value(d, &s), psi(4 * d).unwrap().evaluate(&(&s * 2)), "d = {d}");
        }
    }
    for x in 2..=5i64 {
        let x = BigInt::from(x);
        for d in 1..=60u64 {
            assert_eq!(cyclotomic_value(d, &x), cyclotomic(d).evaluate(&x));
        }
    }
}
