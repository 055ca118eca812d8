//! Pell equations `r^2 - D s^2 = 1`: fundamental solution, the solution
//! stream, and indices where `s` is divisible by a modulus.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::numtheory::is_perfect_square;

pub const DEFAULT_DIGIT_BUDGET: u64 = 5000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PellError {
    #[error("D = {0} must be at least 2 and not a perfect square")]
    Domain(BigInt),
    #[error("fundamental solution for D = {d} exceeds {digit_budget} digits")]
    BudgetExceeded { d: BigInt, digit_budget: u64 },
    #[error("({r}, {s}) does not solve r^2 - {d} s^2 = 1")]
    NotASolution { d: BigInt, r: BigInt, s: BigInt },
    #[error("modulus must be in [2, 2^64), got {0}")]
    Modulus(BigInt),
}

fn approx_digits(x: &BigInt) -> u64 {
    // floor(bits * log10 2) undercounts by at most one digit
    (x.bits() as f64 * std::f64::consts::LOG10_2) as u64
}

/// Minimal positive solution of `r^2 - D s^2 = 1`, from the continued fraction
/// of `sqrt(D)`.
pub fn fundamental_solution(d: &BigInt, digit_budget: u64) -> Result<(BigInt, BigInt), PellError> {
    if d < &BigInt::from(2) || is_perfect_square(d) {
        return Err(PellError::Domain(d.clone()));
    }
    let a0 = d.sqrt();
    let two_a0: BigInt = &a0 * 2;
    let (mut m, mut q, mut a) = (BigInt::zero(), BigInt::one(), a0.clone());
    let (mut p_prev, mut p) = (BigInt::one(), a0.clone());
    let (mut q_prev, mut qq) = (BigInt::zero(), BigInt::one());
    loop {
        m = &q * &a - &m;
        q = (d - &m * &m) / &q;
        a = (&a0 + &m) / &q;
        if a == two_a0 {
            // End of a period: the previous convergent gives +-1.
            if &p * &p - d * &qq * &qq == BigInt::one() {
                return Ok((p, qq));
            }
        }
        let p_next = &a * &p + &p_prev;
        let q_next = &a * &qq + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut qq, q_next);
        if approx_digits(&p) > digit_budget {
            return Err(PellError::BudgetExceeded {
                d: d.clone(),
                digit_budget,
            });
        }
    }
}

/// Solutions `(r_k, s_k)` for `k = 0, 1, 2, ...` starting at `(1, 0)`.
#[derive(Debug, Clone)]
pub struct PellStream {
    d: BigInt,
    fundamental: (BigInt, BigInt),
    prev: (BigInt, BigInt),
    cur: (BigInt, BigInt),
    index: u64,
}

impl PellStream {
    pub fn new(d: &BigInt, fundamental: (BigInt, BigInt)) -> Result<Self, PellError> {
        let (r, s) = &fundamental;
        if !s.is_positive() || r * r - d * s * s != BigInt::one() {
            return Err(PellError::NotASolution {
                d: d.clone(),
                r: r.clone(),
                s: s.clone(),
            });
        }
        // prev is the k = -1 term (r_1, -s_1), so the recurrence yields k = 1 next.
        let prev = (r.clone(), -s.clone());
        Ok(PellStream {
            d: d.clone(),
            fundamental,
            prev,
            cur: (BigInt::one(), BigInt::zero()),
            index: 0,
        })
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn fundamental(&self) -> &(BigInt, BigInt) {
        &self.fundamental
    }

    /// `(r_k, s_k)` for arbitrary `k`, by binary powering of `r_1 + s_1 sqrt(D)`.
    pub fn pair_at(&self, k: u64) -> (BigInt, BigInt) {
        let mul = |x: &(BigInt, BigInt), y: &(BigInt, BigInt)| {
            (
                &x.0 * &y.0 + &self.d * &x.1 * &y.1,
                &x.0 * &y.1 + &x.1 * &y.0,
            )
        };
        let mut acc = (BigInt::one(), BigInt::zero());
        let mut base = self.fundamental.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = mul(&base, &base);
            }
        }
        acc
    }

    /// Indices `k` with `m | s_k`, in increasing order.
    pub fn indices_with_s_divisible(&self, m: &BigInt) -> Result<DivisibleIndices, PellError> {
        let mm = m
            .to_u64()
            .filter(|&v| v >= 2)
            .ok_or_else(|| PellError::Modulus(m.clone()))?;
        let two_r1 = ((&self.fundamental.0 * 2u32) % m).to_u64().expect("reduced") as u128;
        let s1 = (&self.fundamental.1 % m).to_u64().expect("reduced");
        Ok(DivisibleIndices {
            m: mm,
            two_r1,
            s1,
            pair: (0, s1),
            k: 0,
            zeros: Vec::new(),
            period: None,
            emitted: 0,
        })
    }
}

impl Iterator for PellStream {
    type Item = (BigInt, BigInt);

    fn next(&mut self) -> Option<Self::Item> {
        let out = self.cur.clone();
        let two_r1: BigInt = &self.fundamental.0 * 2;
        let next = (
            &two_r1 * &self.cur.0 - &self.prev.0,
            &two_r1 * &self.cur.1 - &self.prev.1,
        );
        self.prev = std::mem::replace(&mut self.cur, next);
        self.index += 1;
        Some(out)
    }
}

/// Lazy indices with `s_k = 0 (mod m)`. Scans the residues once around their
/// period, then repeats the zeros found by adding multiples of the period.
#[derive(Debug, Clone)]
pub struct DivisibleIndices {
    m: u64,
    two_r1: u128,
    s1: u64,
    pair: (u64, u64),
    k: u64,
    zeros: Vec<u64>,
    period: Option<u64>,
    emitted: usize,
}

impl DivisibleIndices {
    /// Period of `s_k mod m`, once the scan has wrapped around.
    pub fn period(&self) -> Option<u64> {
        self.period
    }

    fn step(&mut self) {
        let m = self.m as u128;
        let (a, b) = self.pair;
        let c = (self.two_r1 * b as u128 + m - a as u128) % m;
        self.pair = (b, c as u64);
        self.k += 1;
        if self.pair == (0, self.s1) {
            let p = self.k;
            assert!(
                (p as u128) <= (self.m as u128) * (self.m as u128),
                "period {p} exceeds m^2"
            );
            self.period = Some(p);
        }
    }
}

impl Iterator for DivisibleIndices {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if let Some(p) = self.period {
            let n = self.zeros.len();
            let i = self.emitted;
            self.emitted += 1;
            return Some(self.zeros[i % n] + (i / n) as u64 * p);
        }
        loop {
            if self.pair.0 == 0 {
                let k = self.k;
                self.zeros.push(k);
                self.emitted += 1;
                self.step();
                return Some(k);
            }
            self.step();
            if self.period.is_some() {
                return self.next();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn fundamental_examples() {
        assert_eq!(fundamental_solution(&b(2), 100).unwrap(), (b(3), b(2)));
        assert_eq!(fundamental_solution(&b(3), 100).unwrap(), (b(2), b(1)));
        assert_eq!(fundamental_solution(&b(4), 100), Err(PellError::Domain(b(4))));
        assert_eq!(fundamental_solution(&b(61), 100).unwrap(), (b(1_766_319_049), b(226_153_980)));
        assert!(matches!(
            fundamental_solution(&b(61), 5),
            Err(PellError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn stream_examples() {
        let st = PellStream::new(&b(2), (b(3), b(2))).unwrap();
        let v: Vec<_> = st.take(4).collect();
        assert_eq!(v, vec![(b(1), b(0)), (b(3), b(2)), (b(17), b(12)), (b(99), b(70))]);
        let st = PellStream::new(&b(3), (b(2), b(1))).unwrap();
        assert_eq!(st.clone().nth(3).unwrap(), (b(26), b(15)));
        assert_eq!(st.pair_at(3), (b(26), b(15)));
        assert!(PellStream::new(&b(3), (b(3), b(1))).is_err());
    }

    #[test]
    fn divisible_index_examples() {
        let st = PellStream::new(&b(2), (b(3), b(2))).unwrap();
        let v: Vec<u64> = st.indices_with_s_divisible(&b(3)).unwrap().take(4).collect();
        assert_eq!(v, vec![0, 2, 4, 6]);
        let st = PellStream::new(&b(3), (b(2), b(1))).unwrap();
        let mut it = st.indices_with_s_divisible(&b(5)).unwrap();
        let v: Vec<u64> = it.by_ref().take(3).collect();
        assert_eq!(v, vec![0, 3, 6]);
        assert_eq!(it.period(), Some(3));
        assert!(st.indices_with_s_divisible(&b(1)).is_err());
    }

    #[test]
    fn pair_at_matches_stream() {
        let st = PellStream::new(&b(7), fundamental_solution(&b(7), 100).unwrap()).unwrap();
        for (k, pair) in st.clone().take(20).enumerate() {
            assert_eq!(st.pair_at(k as u64), pair);
        }
    }
}
