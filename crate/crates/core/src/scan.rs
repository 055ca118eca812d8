//! Smooth values of a polynomial: the `n` in a range where `P+(f(n)) < n^theta`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::construct::WitnessCertificate;
use crate::intpoly::IntPoly;
use crate::numtheory::{factorize, is_probable_prime, ln_abs, trial_divide, FactorBudget, TRIAL_BOUND};

/// A logarithmic exponent rounded to four decimal places.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponent(u32);

impl Exponent {
    pub const ONE: Exponent = Exponent(10_000);

    pub fn from_f64(x: f64) -> Self {
        Exponent((x * 10_000.0).round().max(0.0) as u32)
    }

    /// `log(a) / log(b)` for `a >= 1`, `b >= 2`.
    pub fn log_ratio(a: &BigInt, b: &BigInt) -> Self {
        if a == b {
            return Exponent::ONE;
        }
        Exponent::from_f64(ln_abs(a) / ln_abs(b))
    }

    pub fn ten_thousandths(self) -> u32 {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64 / 10_000.0
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{:04}", self.0 / 10_000, self.0 % 10_000)
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScanError {
    #[error("theta must look like j/k or a decimal, got {0:?}")]
    BadTheta(String),
    #[error("theta must satisfy 0 < theta <= deg f")]
    ThetaOutOfRange,
    #[error("polynomial must be nonconstant")]
    ConstantPolynomial,
    #[error("empty range {from}..={to}")]
    EmptyRange { from: u64, to: u64 },
}

/// `theta = j/k` in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Theta {
    pub j: u32,
    pub k: u32,
}

impl Theta {
    pub fn new(j: u32, k: u32) -> Result<Self, ScanError> {
        if j == 0 || k == 0 {
            return Err(ScanError::ThetaOutOfRange);
        }
        let g = num_integer::gcd(j, k);
        Ok(Theta { j: j / g, k: k / g })
    }
}

impl fmt::Display for Theta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.j, self.k)
    }
}

impl FromStr for Theta {
    type Err = ScanError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ScanError::BadTheta(s.to_string());
        let s = s.trim();
        if let Some((j, k)) = s.split_once('/') {
            let j = j.trim().parse().map_err(|_| bad())?;
            let k = k.trim().parse().map_err(|_| bad())?;
            return Theta::new(j, k);
        }
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if frac.len() > 6 || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let int: u32 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
        let scale = 10u32.pow(frac.len() as u32);
        let frac_v: u32 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        let j = int.checked_mul(scale).and_then(|v| v.checked_add(frac_v)).ok_or_else(bad)?;
        Theta::new(j, scale)
    }
}

/// One `n` with `P+(f(n)) < n^theta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanRecord {
    pub n: u64,
    pub value: BigInt,
    pub p_plus: BigInt,
    pub exponent: Exponent,
}

impl Serialize for ScanRecord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ScanRecord", 4)?;
        st.serialize_field("n", &self.n.to_string())?;
        st.serialize_field("value", &self.value.to_string())?;
        st.serialize_field("p_plus", &self.p_plus.to_string())?;
        st.serialize_field("exponent", &self.exponent)?;
        st.end()
    }
}

impl ScanRecord {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("plain strings")
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ScanSummary {
    pub scanned: u64,
    pub hits: u64,
    pub min_exponent: Option<Exponent>,
    /// `n` whose factorization ran out of budget before a decision.
    pub unresolved: Vec<u64>,
}

impl ScanSummary {
    fn merge(&mut self, other: ScanSummary) {
        self.scanned += other.scanned;
        self.hits += other.hits;
        self.min_exponent = match (self.min_exponent, other.min_exponent) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self.unresolved.extend(other.unresolved);
        self.unresolved.sort_unstable();
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanResult {
    pub hits: Vec<ScanRecord>,
    pub summary: ScanSummary,
}

enum Decision {
    Hit(BigInt),
    Miss,
    Unresolved,
}

/// Decides `P+(value) < n^theta` with as little factoring as is sound.
fn decide(value: &BigInt, n: u64, theta: Theta, budget: &FactorBudget) -> Decision {
    let bound = num_traits::pow(BigInt::from(n), theta.j as usize);
    let below = |p: &BigInt| num_traits::pow(p.clone(), theta.k as usize) < bound;
    let (small, rest) = trial_divide(value);
    let small_max = small.into_iter().max();
    if let Some(p) = &small_max {
        if !below(p) {
            return Decision::Miss;
        }
    }
    if rest.is_one() {
        return match small_max {
            Some(p) => Decision::Hit(p),
            None => Decision::Miss,
        };
    }
    // every prime left exceeds the trial bound
    if !below(&BigInt::from(TRIAL_BOUND)) {
        return Decision::Miss;
    }
    if is_probable_prime(&rest) {
        return if below(&rest) { Decision::Hit(rest) } else { Decision::Miss };
    }
    match factorize(&rest, budget) {
        Ok(pf) => {
            let p = pf.largest().cloned().expect("rest > 1");
            if below(&p) {
                Decision::Hit(p)
            } else {
                Decision::Miss
            }
        }
        Err(_) => Decision::Unresolved,
    }
}

fn scan_chunk(f: &IntPoly, from: u64, to: u64, theta: Theta, budget: &FactorBudget) -> ScanResult {
    let mut hits = Vec::new();
    let mut summary = ScanSummary::default();
    for n in from..=to {
        summary.scanned += 1;
        let value = f.evaluate(&BigInt::from(n));
        if value.abs() < BigInt::from(2) {
            continue;
        }
        match decide(&value, n, theta, budget) {
            Decision::Hit(p) => {
                let exponent = Exponent::log_ratio(&p, &BigInt::from(n));
                summary.hits += 1;
                summary.min_exponent = Some(summary.min_exponent.map_or(exponent, |e| e.min(exponent)));
                hits.push(ScanRecord { n, value, p_plus: p, exponent });
            }
            Decision::Miss => {}
            Decision::Unresolved => summary.unresolved.push(n),
        }
    }
    ScanResult { hits, summary }
}

/// Scans `from..=to`, split across `jobs` threads; the result does not depend
/// on `jobs`.
pub fn scan(
    f: &IntPoly,
    from: u64,
    to: u64,
    theta: Theta,
    budget: &FactorBudget,
    jobs: usize,
) -> Result<ScanResult, ScanError> {
    let deg = f.deg().filter(|&d| d >= 1).ok_or(ScanError::ConstantPolynomial)?;
    if from == 0 || from > to {
        return Err(ScanError::EmptyRange { from, to });
    }
    if theta.j as u64 > deg as u64 * theta.k as u64 {
        return Err(ScanError::ThetaOutOfRange);
    }
    let jobs = jobs.max(1) as u64;
    let len = to - from + 1;
    let chunk = len.div_ceil(jobs);
    let ranges: Vec<(u64, u64)> = (0..jobs)
        .map(|i| (from + i * chunk, (from + (i + 1) * chunk - 1).min(to)))
        .filter(|(a, b)| a <= b && *a >= from)
        .collect();
    let parts: Vec<ScanResult> = if ranges.len() == 1 {
        vec![scan_chunk(f, from, to, theta, budget)]
    } else {
        std::thread::scope(|s| {
            let handles: Vec<_> = ranges
                .iter()
                .map(|&(a, b)| s.spawn(move || scan_chunk(f, a, b, theta, budget)))
                .collect();
            handles.into_iter().map(|h| h.join().expect("scan worker panicked")).collect()
        })
    };
    let mut out = ScanResult { hits: Vec::new(), summary: ScanSummary::default() };
    for part in parts {
        out.hits.extend(part.hits);
        out.summary.merge(part.summary);
    }
    out.hits.sort_by_key(|r| r.n);
    Ok(out)
}

/// `log(max factor) / log(n)`, an upper bound on the exponent of `P+(P(n))`
/// read off the certificate. `None` for `n < 2` or an empty factor list.
pub fn certificate_smoothness(cert: &WitnessCertificate) -> Option<Exponent> {
    let max = cert.factors.iter().max()?;
    if cert.n < BigInt::from(2) || !max.is_positive() {
        return None;
    }
    if max.is_zero() {
        return None;
    }
    Some(Exponent::log_ratio(max, &cert.n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_quadratic() -> IntPoly {
        IntPoly::from_i64(&[1, 0, 1])
    }

    #[test]
    fn theta_parsing() {
        assert_eq!("14/25".parse::<Theta>().unwrap(), Theta { j: 14, k: 25 });
        assert_eq!("0.56".parse::<Theta>().unwrap(), Theta { j: 14, k: 25 });
        assert_eq!("2".parse::<Theta>().unwrap(), Theta { j: 2, k: 1 });
        assert!("x".parse::<Theta>().is_err());
        assert!("0/3".parse::<Theta>().is_err());
    }

    #[test]
    fn exponent_format() {
        assert_eq!(Exponent::from_f64(0.93057).to_string(), "0.9306");
        assert_eq!(Exponent::ONE.to_string(), "1.0000");
        assert_eq!(Exponent::from_f64(1.5).to_string(), "1.5000");
    }

    #[test]
    fn hits_and_misses() {
        let b = FactorBudget::default();
        let theta = Theta::new(14, 25).unwrap();
        let r = scan(&unit_quadratic(), 1, 300, theta, &b, 1).unwrap();
        let h = r.hits.iter().find(|h| h.n == 239).expect("239 is a hit");
        assert_eq!(h.p_plus, BigInt::from(13));
        assert_eq!(h.value, BigInt::from(57122));
        assert!(r.hits.iter().all(|h| h.n != 1 && h.n != 3));
        assert_eq!(
            h.to_json_line(),
            r#"{"n":"239","value":"57122","p_plus":"13","exponent":"0.4684"}"#
        );
    }

    #[test]
    fn jobs_do_not_change_output() {
        let b = FactorBudget::default();
        let theta = Theta::new(3, 4).unwrap();
        let one = scan(&unit_quadratic(), 1, 2000, theta, &b, 1).unwrap();
        let four = scan(&unit_quadratic(), 1, 2000, theta, &b, 4).unwrap();
        assert_eq!(one, four);
    }

    #[test]
    fn rejects_bad_arguments() {
        let b = FactorBudget::default();
        let t = Theta::new(3, 1).unwrap();
        assert_eq!(scan(&unit_quadratic(), 1, 10, t, &b, 1), Err(ScanError::ThetaOutOfRange));
        let t = Theta::new(1, 2).unwrap();
        assert_eq!(scan(&IntPoly::constant(5.into()), 1, 10, t, &b, 1), Err(ScanError::ConstantPolynomial));
        assert!(matches!(scan(&unit_quadratic(), 5, 4, t, &b, 1), Err(ScanError::EmptyRange { .. })));
    }
}
