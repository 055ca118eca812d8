//! Primes, factorization, valuations, and the Mertens prime-product selector.

mod factor;
mod prime;

pub use factor::{
    factorize, largest_prime_factor, trial_divide, FactorBudget, FactorError, PrimeFactorization,
    DEFAULT_RHO_ITERATIONS, TRIAL_BOUND,
};
pub use prime::{is_prime_u64, is_probable_prime, next_prime, next_prime_big, primes_from, sieve};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::intpoly::IntPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumError {
    #[error("{0} is not prime")]
    NotPrime(BigInt),
    #[error("negative argument {0}")]
    Negative(BigInt),
    #[error("target must be positive")]
    NonPositiveTarget,
    #[error("ratio must be at least 1")]
    RatioBelowOne,
    #[error("polynomial must be nonconstant")]
    ConstantPolynomial,
    #[error("more than {max_primes} primes needed to pass {threshold}")]
    MertensCap { max_primes: usize, threshold: BigRational },
    #[error("no prime above {lower_bound} found in q(0..{scanned})")]
    ScanExhausted { lower_bound: BigInt, scanned: u64 },
    #[error(transparent)]
    Factor(#[from] FactorError),
}

/// Legendre: the exponent of `p` in `n!`.
pub fn nu_p_factorial(p: &BigInt, n: &BigInt) -> Result<BigInt, NumError> {
    if n.is_negative() {
        return Err(NumError::Negative(n.clone()));
    }
    if !is_probable_prime(p) {
        return Err(NumError::NotPrime(p.clone()));
    }
    let mut total = BigInt::zero();
    let mut q = n / p;
    while !q.is_zero() {
        total += &q;
        q /= p;
    }
    Ok(total)
}

/// Consecutive primes `p_1 < ... < p_t`, the least of them the least prime
/// `>= min_prime`, with `prod p/(p-1)` compared against `ratio * target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MertensSelection {
    pub primes: Vec<u64>,
    pub product_value: BigRational,
    pub target: BigRational,
}

impl MertensSelection {
    /// Product of the selected primes.
    pub fn primorial(&self) -> BigInt {
        self.primes.iter().map(|&p| BigInt::from(p)).product()
    }
}

fn mertens_run(
    min_prime: u64,
    target: &BigRational,
    ratio: &BigRational,
    strict: bool,
    max_primes: usize,
) -> Result<MertensSelection, NumError> {
    if !target.is_positive() {
        return Err(NumError::NonPositiveTarget);
    }
    if ratio < &BigRational::one() {
        return Err(NumError::RatioBelowOne);
    }
    let threshold = ratio * target;
    let mut product = BigRational::one();
    let mut primes = Vec::new();
    for p in primes_from(min_prime) {
        product *= BigRational::new(p.into(), (p - 1).into());
        primes.push(p);
        let done = if strict { product > threshold } else { product >= threshold };
        if done {
            break;
        }
        if primes.len() >= max_primes {
            return Err(NumError::MertensCap { max_primes, threshold });
        }
    }
    Ok(MertensSelection {
        primes,
        product_value: product,
        target: threshold,
    })
}

/// Minimal run with `prod p/(p-1) >= ratio * target`.
pub fn mertens_select(
    min_prime: u64,
    target: &BigRational,
    ratio: &BigRational,
) -> Result<MertensSelection, NumError> {
    mertens_run(min_prime, target, ratio, false, usize::MAX)
}

/// Minimal run with `prod p/(p-1) > ratio * target`; the strict form gives the
/// degree drop the constructors need.
pub fn mertens_select_strict(
    min_prime: u64,
    target: &BigRational,
    ratio: &BigRational,
) -> Result<MertensSelection, NumError> {
    mertens_run(min_prime, target, ratio, true, usize::MAX)
}

/// [`mertens_select_strict`] giving up after `max_primes` primes.
pub fn mertens_select_strict_capped(
    min_prime: u64,
    target: &BigRational,
    ratio: &BigRational,
    max_primes: usize,
) -> Result<MertensSelection, NumError> {
    mertens_run(min_prime, target, ratio, true, max_primes)
}

/// Natural logarithm of `|x|` for `x != 0`, accurate to f64 precision at any size.
pub fn ln_abs(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.abs().to_f64().expect("below f64 range").ln();
    }
    let shift = bits - 64;
    let top = (x.abs() >> shift).to_u64().expect("64 bits");
    (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
}

pub fn is_perfect_square(m: &BigInt) -> bool {
    if m.is_negative() {
        return false;
    }
    let r = m.sqrt();
    &(&r * &r) == m
}

/// Scan limits for [`find_prime_divisor_of_values`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanBudget {
    pub max_l: u64,
    pub factor: FactorBudget,
}

impl Default for ScanBudget {
    fn default() -> Self {
        ScanBudget {
            max_l: 10_000,
            factor: FactorBudget::default(),
        }
    }
}

/// First `l = 0, 1, 2, ...` such that `q(l)` has a prime divisor above
/// `lower_bound`; returns that `l` and the least such prime.
pub fn find_prime_divisor_of_values(
    q: &IntPoly,
    lower_bound: &BigInt,
    budget: &ScanBudget,
) -> Result<(BigInt, BigInt), NumError> {
    if q.is_constant() {
        return Err(NumError::ConstantPolynomial);
    }
    for l in 0..budget.max_l {
        let l = BigInt::from(l);
        let v = q.evaluate(&l);
        if v.is_zero() || v.abs().is_one() {
            continue;
        }
        let f = factorize(&v, &budget.factor)?;
        if let Some((p, _)) = f.factors.iter().find(|(p, _)| p > lower_bound) {
            return Ok((l, p.clone()));
        }
    }
    Err(NumError::ScanExhausted {
        lower_bound: lower_bound.clone(),
        scanned: budget.max_l,
    })
}

/// Factorization of a machine integer as (prime, exponent) pairs.
pub fn factor_u64(n: u64) -> Vec<(u64, u32)> {
    let f = factorize(&BigInt::from(n), &FactorBudget::default())
        .expect("u64 values always factor within the default budget");
    f.factors
        .into_iter()
        .map(|(p, e)| (u64::try_from(p).expect("prime fits u64"), e))
        .collect()
}

/// Sorted divisors of `n >= 1`.
pub fn divisors_u64(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, e) in factor_u64(n) {
        let cur = ds.clone();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            ds.extend(cur.iter().map(|d| d * pk));
        }
    }
    ds.sort_unstable();
    ds
}

/// Moebius function of `n >= 1`.
pub fn mobius(n: u64) -> i8 {
    let f = factor_u64(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Integer square root (floor) of a nonnegative integer.
pub fn isqrt(m: &BigInt) -> BigInt {
    m.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn ln_of_huge_values() {
        assert!((ln_abs(&b(-21)) - 21f64.ln()).abs() < 1e-12);
        let big = BigInt::from(3).pow(5000);
        assert!((ln_abs(&big) / (5000.0 * 3f64.ln()) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(nu_p_factorial(&b(2), &b(10)).unwrap(), b(8));
        assert_eq!(nu_p_factorial(&b(11), &b(10)).unwrap(), b(0));
        assert_eq!(nu_p_factorial(&b(3), &b(5)).unwrap(), b(1));
        assert_eq!(nu_p_factorial(&b(4), &b(5)), Err(NumError::NotPrime(b(4))));
        assert_eq!(nu_p_factorial(&b(3), &b(0)).unwrap(), b(0));
    }

    #[test]
    fn mertens_examples() {
        let one = BigRational::one();
        let s = mertens_select(2, &q(2, 1), &one).unwrap();
        assert_eq!(s.primes, vec![2]);
        assert_eq!(s.product_value, q(2, 1));
        let s = mertens_select(3, &q(2, 1), &one).unwrap();
        assert_eq!(s.primes, vec![3, 5, 7]);
        assert_eq!(s.product_value, q(35, 16));
        assert_eq!(mertens_select(2, &q(1, 2), &one).unwrap().primes, vec![2]);
        assert_eq!(mertens_select_strict(2, &q(2, 1), &one).unwrap().primes, vec![2, 3]);
        assert_eq!(mertens_select(2, &q(0, 1), &one), Err(NumError::NonPositiveTarget));
        assert_eq!(mertens_select(2, &q(2, 1), &q(1, 2)), Err(NumError::RatioBelowOne));
    }

    #[test]
    fn square_examples() {
        assert!(is_perfect_square(&b(0)));
        assert!(is_perfect_square(&b(49)));
        assert!(!is_perfect_square(&b(50)));
        assert!(is_perfect_square(&b(1_000_000_000_000_000_000)));
        assert!(!is_perfect_square(&b(-4)));
    }

    #[test]
    fn schur_scan_examples() {
        let bud = ScanBudget::default();
        let q2 = IntPoly::from_i64(&[2, 2, 1]);
        assert_eq!(find_prime_divisor_of_values(&q2, &b(1), &bud).unwrap(), (b(0), b(2)));
        assert_eq!(find_prime_divisor_of_values(&q2, &b(2), &bud).unwrap(), (b(1), b(5)));
        let lin = IntPoly::from_i64(&[4, 2]);
        assert_eq!(find_prime_divisor_of_values(&lin, &b(10), &bud).unwrap(), (b(9), b(11)));
        assert_eq!(
            find_prime_divisor_of_values(&IntPoly::from_i64(&[3]), &b(1), &bud),
            Err(NumError::ConstantPolynomial)
        );
        let tiny = ScanBudget { max_l: 3, ..bud };
        assert!(matches!(
            find_prime_divisor_of_values(&lin, &b(10), &tiny),
            Err(NumError::ScanExhausted { .. })
        ));
    }

    #[test]
    fn arithmetic_helpers() {
        assert_eq!(divisors_u64(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors_u64(1), vec![1]);
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(6), 1);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(12), 0);
    }
}
