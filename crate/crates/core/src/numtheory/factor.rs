//! Trial division followed by Pollard rho (Brent's cycle finding).

use std::sync::OnceLock;

use num_bigint::{BigInt, RandBigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::prime::{is_prime_u64, is_probable_prime, mul_mod, sieve};

pub const TRIAL_BOUND: u64 = 10_000;
pub const DEFAULT_RHO_ITERATIONS: u64 = 4_000_000;

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| sieve(TRIAL_BOUND))
}

/// Effort limit for [`factorize`]: total rho iterations across all splits,
/// plus the seed for the random polynomial offsets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorBudget {
    pub rho_iterations: u64,
    pub seed: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget {
            rho_iterations: DEFAULT_RHO_ITERATIONS,
            seed: 0,
        }
    }
}

impl FactorBudget {
    pub fn with_iterations(rho_iterations: u64) -> Self {
        FactorBudget {
            rho_iterations,
            ..Default::default()
        }
    }
}

/// Sorted prime powers and a sign.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PrimeFactorization {
    pub factors: Vec<(BigInt, u32)>,
    pub unit: i8,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FactorError {
    #[error("cannot factor zero")]
    Zero,
    #[error("|m| must be at least 2")]
    Domain,
    #[error("factorization budget exhausted; unfactored composite {cofactor}")]
    BudgetExceeded {
        partial: PrimeFactorization,
        cofactor: BigInt,
    },
}

impl PrimeFactorization {
    pub fn reassemble(&self) -> BigInt {
        let mut acc = BigInt::from(self.unit);
        for (p, e) in &self.factors {
            acc *= num_traits::pow(p.clone(), *e as usize);
        }
        acc
    }

    pub fn largest(&self) -> Option<&BigInt> {
        self.factors.last().map(|(p, _)| p)
    }

    /// Exponent of `p` (0 if absent).
    pub fn valuation(&self, p: &BigInt) -> u32 {
        self.factors
            .binary_search_by(|(q, _)| q.cmp(p))
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    fn from_primes(unit: i8, mut primes: Vec<BigInt>) -> Self {
        primes.sort();
        let mut factors: Vec<(BigInt, u32)> = Vec::new();
        for p in primes {
            match factors.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => factors.push((p, 1)),
            }
        }
        PrimeFactorization { factors, unit }
    }
}

/// Strips primes below [`TRIAL_BOUND`]; returns the primes found (with
/// repetition) and the remaining cofactor.
pub fn trial_divide(m: &BigInt) -> (Vec<BigInt>, BigInt) {
    let mut rest = m.abs();
    let mut found = Vec::new();
    if let Some(mut v) = rest.to_u64() {
        for &p in small_primes() {
            if p * p > v {
                break;
            }
            while v % p == 0 {
                v /= p;
                found.push(BigInt::from(p));
            }
        }
        if v > 1 && v < TRIAL_BOUND * TRIAL_BOUND {
            found.push(BigInt::from(v));
            v = 1;
        }
        return (found, BigInt::from(v));
    }
    for &p in small_primes() {
        let bp = BigInt::from(p);
        loop {
            let (q, r) = rest.div_rem(&bp);
            if !r.is_zero() {
                break;
            }
            rest = q;
            found.push(bp.clone());
        }
    }
    (found, rest)
}

fn mix_seed(seed: u64, n: &BigInt) -> u64 {
    n.iter_u64_digits()
        .fold(seed ^ 0x2545_f491_4f6c_dd1d, |h, w| {
            (h ^ w).wrapping_mul(0x9e37_79b9_7f4a_7c15).rotate_left(29)
        })
}

fn rho_u64(n: u64, rng: &mut ChaCha8Rng, remaining: &mut u64) -> Option<u64> {
    if n.is_multiple_of(2) {
        return Some(2);
    }
    const BATCH: u64 = 128;
    loop {
        let c = rng.gen_range(1..n);
        let f = |x: u64| ((mul_mod(x, x, n) as u128 + c as u128) % n as u128) as u64;
        let mut y = rng.gen_range(0..n);
        let mut g = 1u64;
        let mut r = 1u64;
        let mut q = 1u64;
        let mut x = y;
        let mut ys = y;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                let lim = BATCH.min(r - k);
                if *remaining < lim {
                    return None;
                }
                *remaining -= lim;
                for _ in 0..lim {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += lim;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return Some(g);
        }
    }
}

fn rho_big(n: &BigInt, rng: &mut ChaCha8Rng, remaining: &mut u64) -> Option<BigInt> {
    if n.is_even() {
        return Some(BigInt::from(2));
    }
    const BATCH: u64 = 128;
    let one = BigInt::one();
    loop {
        let c = rng.gen_bigint_range(&one, n);
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut y = rng.gen_bigint_range(&BigInt::zero(), n);
        let mut g = BigInt::one();
        let mut r = 1u64;
        let mut q = BigInt::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                let lim = BATCH.min(r - k);
                if *remaining < lim {
                    return None;
                }
                *remaining -= lim;
                for _ in 0..lim {
                    y = f(&y);
                    q = (q * (&x - &y).abs()) % n;
                }
                g = q.gcd(n);
                k += lim;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return Some(g);
        }
    }
}

fn is_prime_any(n: &BigInt) -> bool {
    match n.to_u64() {
        Some(v) => is_prime_u64(v),
        None => is_probable_prime(n),
    }
}

/// Splits a composite `n > 1` into two nontrivial factors.
fn split(n: &BigInt, rng: &mut ChaCha8Rng, remaining: &mut u64) -> Option<(BigInt, BigInt)> {
    let r = n.sqrt();
    if &(&r * &r) == n {
        return Some((r.clone(), r));
    }
    let d = match n.to_u64() {
        Some(v) => rho_u64(v, rng, remaining).map(BigInt::from),
        None => rho_big(n, rng, remaining),
    }?;
    let q = n / &d;
    Some((d, q))
}

/// Complete factorization of `m`, or the partial result when the rho budget
/// runs out.
pub fn factorize(m: &BigInt, budget: &FactorBudget) -> Result<PrimeFactorization, FactorError> {
    if m.is_zero() {
        return Err(FactorError::Zero);
    }
    let unit: i8 = if m.sign() == Sign::Minus { -1 } else { 1 };
    let (mut primes, rest) = trial_divide(m);
    let mut stack = Vec::new();
    if !rest.is_one() {
        stack.push(rest);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(budget.seed, m));
    let mut remaining = budget.rho_iterations;
    let mut stuck: Vec<BigInt> = Vec::new();
    while let Some(c) = stack.pop() {
        if c.is_one() {
            continue;
        }
        if is_prime_any(&c) {
            primes.push(c);
            continue;
        }
        match split(&c, &mut rng, &mut remaining) {
            Some((a, b)) => {
                stack.push(a);
                stack.push(b);
            }
            None => stuck.push(c),
        }
    }
    let partial = PrimeFactorization::from_primes(unit, primes);
    if stuck.is_empty() {
        Ok(partial)
    } else {
        let cofactor = stuck.iter().product();
        Err(FactorError::BudgetExceeded { partial, cofactor })
    }
}

/// P+(m), the largest prime factor of `|m|`.
pub fn largest_prime_factor(m: &BigInt, budget: &FactorBudget) -> Result<BigInt, FactorError> {
    if m.abs() < BigInt::from(2) {
        return Err(FactorError::Domain);
    }
    let f = factorize(m, budget)?;
    Ok(f.largest().cloned().expect("|m| >= 2 has a prime factor"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fz(m: i64) -> PrimeFactorization {
        factorize(&BigInt::from(m), &FactorBudget::default()).unwrap()
    }

    fn pairs(f: &PrimeFactorization) -> Vec<(i64, u32)> {
        f.factors.iter().map(|(p, e)| (p.to_i64().unwrap(), *e)).collect()
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(pairs(&fz(360)), vec![(2, 3), (3, 2), (5, 1)]);
        let u = fz(-1);
        assert_eq!(u.unit, -1);
        assert!(u.factors.is_empty());
        assert_eq!(pairs(&fz(57122)), vec![(2, 1), (13, 4)]);
        assert_eq!(factorize(&BigInt::zero(), &FactorBudget::default()), Err(FactorError::Zero));
    }

    #[test]
    fn largest_prime_factor_examples() {
        let b = FactorBudget::default();
        let lpf = |m: i64| largest_prime_factor(&BigInt::from(m), &b).unwrap();
        assert_eq!(lpf(97), BigInt::from(97));
        assert_eq!(lpf(360), BigInt::from(5));
        assert_eq!(lpf(57122), BigInt::from(13));
        assert_eq!(largest_prime_factor(&BigInt::one(), &b), Err(FactorError::Domain));
    }

    #[test]
    fn semiprimes_beyond_u64() {
        // (2^31 - 1) * (2^89 - 1)
        let p: BigInt = (BigInt::one() << 31) - 1;
        let q: BigInt = (BigInt::one() << 89) - 1;
        let f = factorize(&(&p * &q), &FactorBudget::default()).unwrap();
        assert_eq!(f.factors, vec![(p, 1), (q, 1)]);
        // 1000003 * 1000033 * 999983^2
        let m = BigInt::from(1_000_003u64) * 1_000_033u64 * 999_983u64 * 999_983u64;
        let f = factorize(&m, &FactorBudget::default()).unwrap();
        assert_eq!(f.reassemble(), m);
        assert_eq!(f.valuation(&BigInt::from(999_983)), 2);
    }

    #[test]
    fn budget_exhaustion_is_structured() {
        let p = BigInt::from(1_000_000_007u64);
        let q = BigInt::from(998_244_353u64);
        match factorize(&(BigInt::from(12) * &p * &q), &FactorBudget::with_iterations(10)) {
            Err(FactorError::BudgetExceeded { partial, cofactor }) => {
                assert_eq!(cofactor, &p * &q);
                assert_eq!(partial.reassemble(), BigInt::from(12));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn trial_division_leaves_large_cofactor() {
        let (found, rest) = trial_divide(&BigInt::from(2 * 3 * 10_007i64));
        assert_eq!(found, vec![BigInt::from(2), BigInt::from(3), BigInt::from(10_007)]);
        assert!(rest.is_one());
    }
}
