//! Sieve, Miller-Rabin, and prime iteration.

use num_bigint::{BigInt, BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Witness set that makes Miller-Rabin exact below 3.3e24.
const FIXED_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
const EXTRA_ROUNDS: usize = 8;

/// All primes `<= bound`.
pub fn sieve(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic for every `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &FIXED_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &FIXED_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn mr_round(n: &BigUint, n1: &BigUint, d: &BigUint, s: u64, a: &BigUint) -> bool {
    let mut x = a.modpow(d, n);
    if x.is_one() || &x == n1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if &x == n1 {
            return true;
        }
    }
    false
}

/// Miller-Rabin: exact for `n < 2^64`, otherwise twelve fixed bases plus
/// random bases drawn from a generator seeded by `n` itself, so the answer is
/// reproducible.
pub fn is_probable_prime(n: &BigInt) -> bool {
    if n.sign() != num_bigint::Sign::Plus {
        return false;
    }
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    let n = n.magnitude();
    for &p in &FIXED_BASES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let n1 = n - 1u32;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    for &a in &FIXED_BASES {
        if !mr_round(n, &n1, &d, s, &BigUint::from(a)) {
            return false;
        }
    }
    let seed = n.iter_u64_digits().fold(0x9e37_79b9_7f4a_7c15u64, |h, w| {
        h.rotate_left(17) ^ w.wrapping_mul(0xff51_afd7_ed55_8ccd)
    });
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let two = BigUint::from(2u32);
    for _ in 0..EXTRA_ROUNDS {
        let a = rng.gen_biguint_range(&two, &n1);
        if !mr_round(n, &n1, &d, s, &a) {
            return false;
        }
    }
    true
}

/// Least prime strictly greater than `n`.
pub fn next_prime(n: u64) -> u64 {
    let mut c = n + 1;
    if c <= 2 {
        return 2;
    }
    if c.is_even() {
        c += 1;
    }
    while !is_prime_u64(c) {
        c += 2;
    }
    c
}

/// Consecutive primes starting at the least prime `>= from`.
pub fn primes_from(from: u64) -> impl Iterator<Item = u64> {
    let first = if from <= 2 { 2 } else { next_prime(from - 1) };
    std::iter::successors(Some(first), |&p| Some(next_prime(p)))
}

/// Least prime strictly greater than `n` for big `n`.
pub fn next_prime_big(n: &BigInt) -> BigInt {
    if let Some(v) = n.to_u64() {
        if v < u64::MAX - 1000 {
            return BigInt::from(next_prime(v));
        }
    }
    let mut c: BigInt = n + 1;
    if c.is_even() {
        c += 1;
    }
    while !is_probable_prime(&c) {
        c += 2;
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieve_small() {
        assert_eq!(sieve(30), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(sieve(1).is_empty());
    }

    #[test]
    fn u64_primality_matches_sieve() {
        let ps = sieve(100_000);
        let mut it = ps.iter().peekable();
        for n in 0..=100_000u64 {
            let expect = it.peek().is_some_and(|&&p| p == n);
            if expect {
                it.next();
            }
            assert_eq!(is_prime_u64(n), expect, "{n}");
        }
    }

    #[test]
    fn known_large_values() {
        // Mersenne prime 2^127 - 1 and a Carmichael number.
        let m127 = (BigInt::one() << 127) - 1;
        assert!(is_probable_prime(&m127));
        assert!(!is_probable_prime(&(&m127 + 2)));
        assert!(!is_probable_prime(&BigInt::from(561)));
        assert!(is_prime_u64(18_446_744_073_709_551_557));
        assert!(!is_prime_u64(3_215_031_751));
        // 2^64 + 13 is prime
        assert!(is_probable_prime(&((BigInt::one() << 64) + 13)));
    }

    #[test]
    fn prime_iteration() {
        let v: Vec<u64> = primes_from(3).take(4).collect();
        assert_eq!(v, vec![3, 5, 7, 11]);
        assert_eq!(next_prime(2), 3);
        assert_eq!(next_prime(0), 2);
        assert_eq!(next_prime_big(&BigInt::from(89)), BigInt::from(97));
    }
}
