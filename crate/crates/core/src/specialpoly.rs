//! Cyclotomic polynomials, their real companions psi, and Chebyshev
//! polynomials of the first kind, as polynomials and as exact values.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::intpoly::IntPoly;
use crate::numtheory::{divisors_u64, factor_u64, mobius};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecialPolyError {
    #[error("psi_n needs n >= 3, got {0}")]
    PsiIndex(u64),
    #[error("index must be positive")]
    ZeroIndex,
}

pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "euler_phi needs n >= 1");
    factor_u64(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

fn cyclotomic_cache() -> &'static RwLock<HashMap<u64, IntPoly>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, IntPoly>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn x_pow_minus_one(n: u64) -> IntPoly {
    let mut c = vec![BigInt::zero(); n as usize + 1];
    c[0] = -BigInt::one();
    c[n as usize] = BigInt::one();
    IntPoly::new(c)
}

/// `Phi_n`: `x^n - 1` divided by every `Phi_d` with `d | n`, `d < n`.
/// Memoized; safe to call from several threads.
pub fn cyclotomic(n: u64) -> IntPoly {
    assert!(n >= 1, "cyclotomic needs n >= 1");
    if let Some(p) = cyclotomic_cache().read().expect("cache poisoned").get(&n) {
        return p.clone();
    }
    let mut acc = x_pow_minus_one(n);
    for d in divisors_u64(n) {
        if d < n {
            acc = acc.div_exact_or_panic(&cyclotomic(d));
        }
    }
    cyclotomic_cache()
        .write()
        .expect("cache poisoned")
        .entry(n)
        .or_insert(acc)
        .clone()
}

/// `Phi_n` through the Moebius product of `x^d - 1`; an independent route
/// used to cross-check [`cyclotomic`].
pub fn cyclotomic_mobius(n: u64) -> IntPoly {
    let mut num = IntPoly::one();
    let mut den = IntPoly::one();
    for d in divisors_u64(n) {
        match mobius(n / d) {
            1 => num = &num * &x_pow_minus_one(d),
            -1 => den = &den * &x_pow_minus_one(d),
            _ => {}
        }
    }
    num.div_exact_or_panic(&den)
}

/// `psi_n` with `psi_n(y + 1/y) = y^(-phi(n)/2) Phi_n(y)`, by back-substitution
/// against the powers of `y + 1/y`.
pub fn psi(n: u64) -> Result<IntPoly, SpecialPolyError> {
    if n < 3 {
        return Err(SpecialPolyError::PsiIndex(n));
    }
    let phi = cyclotomic(n);
    let h = euler_phi(n) as usize / 2;
    // Laurent coefficients of y^-h Phi_n(y), index j + h for exponent j.
    let mut laurent: Vec<BigInt> = phi.coeffs().to_vec();
    let mut out = vec![BigInt::zero(); h + 1];
    for j in (0..=h).rev() {
        let t = laurent[j + h].clone();
        if t.is_zero() {
            continue;
        }
        // (y + 1/y)^j = sum_i C(j,i) y^(j-2i)
        let mut binom = BigInt::one();
        for i in 0..=j {
            let idx = h + j - 2 * i;
            laurent[idx] -= &t * &binom;
            binom = binom * BigInt::from(j - i) / BigInt::from(i + 1);
        }
        out[j] = t;
    }
    debug_assert!(laurent.iter().all(|c| c.is_zero()));
    Ok(IntPoly::new(out))
}

/// Dickson polynomial `D_k` with `D_k(y + 1/y) = y^k + y^-k`; equals `2 T_k(x/2)`.
pub fn dickson(k: u64) -> IntPoly {
    let two = IntPoly::from_i64(&[2]);
    let mut prev = two.clone();
    if k == 0 {
        return prev;
    }
    let x = IntPoly::x();
    let mut cur = x.clone();
    for _ in 1..k {
        let next = &(&x * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// First-kind Chebyshev polynomial, `T_{n+1} = 2x T_n - T_{n-1}`.
pub fn chebyshev_t(n: u64) -> IntPoly {
    let mut prev = IntPoly::one();
    if n == 0 {
        return prev;
    }
    let two_x = IntPoly::from_i64(&[0, 2]);
    let mut cur = IntPoly::x();
    for _ in 1..n {
        let next = &(&two_x * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `2 T_n(x/2)` as an integer polynomial, computed from the coefficients of
/// `T_n` (coefficient `c_i` becomes `c_i * 2^(1-i)`).
pub fn chebyshev_monic(n: u64) -> IntPoly {
    let t = chebyshev_t(n);
    let coeffs = t
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            if i == 0 {
                c * 2
            } else {
                let den = BigInt::one() << (i - 1);
                debug_assert!((c % &den).is_zero());
                c / den
            }
        })
        .collect();
    IntPoly::new(coeffs)
}

/// `T_n(s)` by the doubling formulas on the pair `(T_k, T_{k+1})`.
pub fn chebyshev_value(n: u64, s: &BigInt) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let (mut a, mut b) = (BigInt::one(), s.clone()); // (T_0, T_1)
    for bit in (0..64 - n.leading_zeros()).rev() {
        // (T_k, T_{k+1}) -> (T_2k, T_2k+1)
        let t2k = (&a * &a * 2u32) - 1u32;
        let t2k1 = (&a * &b * 2u32) - s;
        if (n >> bit) & 1 == 1 {
            let t2k2 = (&b * &b * 2u32) - 1u32;
            a = t2k1;
            b = t2k2;
        } else {
            a = t2k;
            b = t2k1;
        }
    }
    a
}

/// `Phi_d(x)` for `x >= 2` via `prod_{e | d} (x^e - 1)^mu(d/e)`.
pub fn cyclotomic_value(d: u64, x: &BigInt) -> BigInt {
    if x < &BigInt::from(2) {
        return cyclotomic(d).evaluate(x);
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for e in divisors_u64(d) {
        let mu = mobius(d / e);
        if mu == 0 {
            continue;
        }
        let v = num_traits::pow(x.clone(), e as usize) - 1u32;
        if mu == 1 {
            num *= v;
        } else {
            den *= v;
        }
    }
    debug_assert!((&num % &den).is_zero());
    num / den
}

/// `psi_{4d}(2s)`. For `s >= 1` this is the Moebius product of the values
/// `2 T_{2^a o'}(s)` over divisors `o'` of the odd part `o` of `d = 2^a o`.
pub fn psi4d_value(d: u64, s: &BigInt) -> BigInt {
    assert!(d >= 1, "psi_{{4d}} needs d >= 1");
    if !s.is_positive() {
        let poly = psi(4 * d).expect("4d >= 4");
        return poly.evaluate(&(s * 2));
    }
    let a = d.trailing_zeros();
    let o = d >> a;
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for od in divisors_u64(o) {
        let mu = mobius(o / od);
        if mu == 0 {
            continue;
        }
        let v = chebyshev_value((1u64 << a) * od, s) * 2u32;
        if mu == 1 {
            num *= v;
        } else {
            den *= v;
        }
    }
    debug_assert!((&num % &den).is_zero());
    num / den
}

/// Divisors `d` of `n` with `n/d` odd, paired with `psi_{4d}(2s)`; the values
/// multiply to `2 T_n(s)`.
pub fn chebyshev_factor_values(n: u64, s: &BigInt) -> Vec<(u64, BigInt)> {
    assert!(n >= 1, "chebyshev_factor_values needs n >= 1");
    divisors_u64(n)
        .into_iter()
        .filter(|d| (n / d) % 2 == 1)
        .map(|d| (d, psi4d_value(d, s)))
        .collect()
}
