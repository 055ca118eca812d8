//! Witness generators: each turns one family of polynomials into concrete
//! `n` with a factor list certifying `P(n) | n!`.

mod certificate;
mod chebyshev;
mod cubic;
mod cyclo;
mod quadratic;
mod quartic;
mod schinzel;

pub use certificate::{
    certificates_from_json, certificates_to_json, CertificateFormatError, ClassTag, Mode,
    WitnessCertificate, SCHEMA_VERSION,
};
pub use chebyshev::construct_chebyshev;
pub use cubic::{construct_cubic, construct_quartic_cubic_linear, top_level_pieces, CubicCandidate, CubicSetup};
pub use cyclo::{construct_binomial_power, construct_cyclotomic};
pub use quadratic::construct_quadratic;
pub use quartic::{construct_quartic_biquadratic, BiquadraticCandidate, BiquadraticPlan, BiquadraticSetup};
pub use schinzel::{
    leading_data, schinzel_pieces, schinzel_pieces_any, schinzel_pieces_displayed,
    InconsistencyReport, SchinzelError, SchinzelPieces,
};

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::numtheory::{NumError, ScanBudget};
use crate::pell::{PellError, DEFAULT_DIGIT_BUDGET};

/// Effort limits shared by the constructors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstructBudget {
    /// Decimal digits allowed for a Pell fundamental solution.
    pub pell_digits: u64,
    /// Largest second-level parameter `l` tried.
    pub max_l: u64,
    /// Largest Pell index (or progression step) examined per setup.
    pub max_index: u64,
    /// Largest witness `n`, in decimal digits.
    pub max_n_digits: u64,
    /// Candidates examined by the quadratic constructor.
    pub max_candidates: u64,
    pub schur: ScanBudget,
}

impl Default for ConstructBudget {
    fn default() -> Self {
        ConstructBudget {
            pell_digits: DEFAULT_DIGIT_BUDGET,
            max_l: 100,
            max_index: 64,
            max_n_digits: 250_000,
            max_candidates: 100_000,
            schur: ScanBudget::default(),
        }
    }
}

/// A Pell instance that stopped a construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PellBlock {
    pub kappa: BigInt,
    pub l: BigInt,
    pub d: BigInt,
    pub reason: String,
}

/// Why a constructor stopped early, with whatever it produced before that.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BudgetReport {
    pub stage: String,
    pub detail: String,
    pub pell_blocks: Vec<PellBlock>,
    pub partial: Vec<WitnessCertificate>,
}

impl fmt::Display for BudgetReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.stage, self.detail)?;
        if !self.pell_blocks.is_empty() {
            write!(f, "; {} blocking Pell instance(s)", self.pell_blocks.len())?;
            if let Some(b) = self.pell_blocks.first() {
                write!(f, ", first D = {} (kappa {}, l {}): {}", b.d, b.kappa, b.l, b.reason)?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("budget exhausted: {0}")]
    Budget(Box<BudgetReport>),
    #[error(transparent)]
    Num(#[from] NumError),
    #[error(transparent)]
    Schinzel(#[from] SchinzelError),
    #[error(transparent)]
    Pell(#[from] PellError),
}

impl ConstructError {
    pub(crate) fn budget(stage: &str, detail: String, partial: Vec<WitnessCertificate>) -> Self {
        ConstructError::Budget(Box::new(BudgetReport {
            stage: stage.to_string(),
            detail,
            pell_blocks: Vec::new(),
            partial,
        }))
    }

    /// Certificates produced before the failure, if any.
    pub fn partial(&self) -> &[WitnessCertificate] {
        match self {
            ConstructError::Budget(r) => &r.partial,
            _ => &[],
        }
    }
}

/// Folds a rational content into an integer factor list: the denominator is
/// divided out of the smallest factor it divides, the numerator multiplied
/// into the smallest factor that stays below `bound` without creating a
/// duplicate, or appended on its own. `None` if the denominator divides no
/// factor.
pub(crate) fn absorb_content(
    mut factors: Vec<BigInt>,
    content: &BigRational,
    bound: &BigInt,
) -> Option<Vec<BigInt>> {
    let num = content.numer().abs();
    let den = content.denom().clone();
    if !den.is_one() {
        let idx = sorted_indices(&factors)
            .into_iter()
            .find(|&i| (&factors[i] % &den).is_zero())?;
        factors[idx] = &factors[idx] / &den;
    }
    if !num.is_one() {
        let target = sorted_indices(&factors).into_iter().find(|&i| {
            let v = &factors[i] * &num;
            &v < bound && !factors.iter().any(|f| f == &v)
        });
        match target {
            Some(i) => factors[i] = &factors[i] * &num,
            None => factors.push(num),
        }
    }
    Some(factors)
}

fn sorted_indices(v: &[BigInt]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&a, &b| v[a].cmp(&v[b]));
    idx
}

/// Drops unit factors (keeping one if nothing else remains).
pub(crate) fn drop_units(factors: Vec<BigInt>) -> Vec<BigInt> {
    let kept: Vec<BigInt> = factors.into_iter().filter(|f| !f.is_one()).collect();
    if kept.is_empty() {
        vec![BigInt::one()]
    } else {
        kept
    }
}

pub(crate) fn all_distinct(factors: &[BigInt]) -> bool {
    let mut v: Vec<&BigInt> = factors.iter().collect();
    v.sort();
    v.windows(2).all(|w| w[0] != w[1])
}

/// Settles the verification mode: distinct when the factors are pairwise
/// distinct and below `n`; if duplicates exist, merging equal entries is tried
/// first; otherwise legendre when every factor is at most `n`. `None` when
/// some factor exceeds `n`.
pub(crate) fn settle_mode(factors: Vec<BigInt>, n: &BigInt) -> Option<(Vec<BigInt>, Mode)> {
    let factors = drop_units(factors);
    if factors.iter().any(|f| f > n || !f.is_positive()) {
        return None;
    }
    if all_distinct(&factors) && factors.iter().all(|f| f < n) {
        return Some((factors, Mode::Distinct));
    }
    let merged = merge_duplicates(&factors);
    if all_distinct(&merged) && merged.iter().all(|f| f < n) {
        return Some((merged, Mode::Distinct));
    }
    Some((factors, Mode::Legendre))
}

/// Replaces each group of equal entries by their product, preserving the
/// overall product and the order of first appearance.
pub(crate) fn merge_duplicates(factors: &[BigInt]) -> Vec<BigInt> {
    let mut out: Vec<(BigInt, BigInt)> = Vec::new();
    for f in factors {
        match out.iter_mut().find(|(k, _)| k == f) {
            Some((_, acc)) => *acc *= f,
            None => out.push((f.clone(), f.clone())),
        }
    }
    out.into_iter().map(|(_, v)| v).collect()
}

/// Strict Mertens selection for the exponent constructors. `N` must fit a
/// machine word, and 15 primes is the most any product below `2^64` can have.
pub(crate) fn select_primes(
    stage: &str,
    min_prime: u64,
    target: &BigRational,
    ratio: &BigRational,
) -> Result<crate::numtheory::MertensSelection, ConstructError> {
    match crate::numtheory::mertens_select_strict_capped(min_prime, target, ratio, 15) {
        Err(NumError::MertensCap { max_primes, threshold }) => Err(ConstructError::budget(
            stage,
            format!("passing {threshold} takes more than {max_primes} primes, so N overflows"),
            Vec::new(),
        )),
        other => Ok(other?),
    }
}

pub(crate) fn product(factors: &[BigInt]) -> BigInt {
    factors.iter().product()
}

pub(crate) fn digits_estimate(x: &BigInt) -> u64 {
    (x.bits() as f64 * std::f64::consts::LOG10_2) as u64 + 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn content_absorption() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        let bound = BigInt::from(100);
        assert_eq!(absorb_content(v(&[4, 9]), &r(1, 1), &bound), Some(v(&[4, 9])));
        assert_eq!(absorb_content(v(&[4, 9]), &r(1, 3), &bound), Some(v(&[4, 3])));
        assert_eq!(absorb_content(v(&[4, 9]), &r(2, 1), &bound), Some(v(&[8, 9])));
        // 4*3 = 12 is fine; 9*3 = 27 also, smallest wins
        assert_eq!(absorb_content(v(&[4, 9]), &r(3, 1), &bound), Some(v(&[12, 9])));
        assert_eq!(absorb_content(v(&[60, 90]), &r(2, 1), &bound), Some(v(&[60, 90, 2])));
        assert_eq!(absorb_content(v(&[4, 9]), &r(1, 5), &bound), None);
    }

    #[test]
    fn mode_settlement() {
        let n = BigInt::from(21);
        assert_eq!(settle_mode(v(&[2, 13, 17]), &n), Some((v(&[2, 13, 17]), Mode::Distinct)));
        assert_eq!(settle_mode(v(&[3, 3]), &n), Some((v(&[9]), Mode::Distinct)));
        assert_eq!(settle_mode(v(&[5, 5]), &n), Some((v(&[5, 5]), Mode::Legendre)));
        assert_eq!(settle_mode(v(&[2, 22]), &n), None);
        assert_eq!(settle_mode(v(&[1, 1, 7]), &n), Some((v(&[7]), Mode::Distinct)));
    }
}
