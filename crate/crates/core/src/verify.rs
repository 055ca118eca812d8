//! Certificate checking without computing `n!`.
//!
//! Two rules: pairwise distinct factors, each at most `n`, embed into the
//! terms of `n!`; otherwise per-prime valuations of the factors are compared
//! with Legendre's formula.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::construct::WitnessCertificate;
use crate::numtheory::{factorize, nu_p_factorial, FactorBudget, FactorError};
use crate::scan::{certificate_smoothness, Exponent};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum RejectReason {
    ProductMismatch {
        #[serde(serialize_with = "as_str")]
        product: BigInt,
        #[serde(serialize_with = "as_str")]
        value: BigInt,
    },
    DuplicateFactor {
        #[serde(serialize_with = "as_str")]
        factor: BigInt,
    },
    FactorExceedsN {
        #[serde(serialize_with = "as_str")]
        factor: BigInt,
    },
    NonPositiveFactor {
        #[serde(serialize_with = "as_str")]
        factor: BigInt,
    },
    NonPositiveN,
    ValuationExceeded {
        #[serde(serialize_with = "as_str")]
        prime: BigInt,
        #[serde(serialize_with = "as_str")]
        needed: BigInt,
        #[serde(serialize_with = "as_str")]
        available: BigInt,
    },
}

fn as_str<S: serde::Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RejectReason::ProductMismatch { product, value } => {
                write!(f, "product-mismatch: factors multiply to {product}, |P(n)| = {value}")
            }
            RejectReason::DuplicateFactor { factor } => write!(f, "duplicate-factor: {factor}"),
            RejectReason::FactorExceedsN { factor } => write!(f, "factor-exceeds-n: {factor}"),
            RejectReason::NonPositiveFactor { factor } => write!(f, "non-positive-factor: {factor}"),
            RejectReason::NonPositiveN => write!(f, "non-positive-n"),
            RejectReason::ValuationExceeded { prime, needed, available } => {
                write!(f, "valuation-exceeded: p = {prime} needs {needed}, n! has {available}")
            }
        }
    }
}

/// `nu_p(|P(n)|)` against `nu_p(n!)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValuationMargin {
    #[serde(serialize_with = "as_str")]
    pub prime: BigInt,
    #[serde(serialize_with = "as_str")]
    pub needed: BigInt,
    #[serde(serialize_with = "as_str")]
    pub available: BigInt,
}

impl ValuationMargin {
    pub fn slack(&self) -> BigInt {
        &self.available - &self.needed
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LegendreOutcome {
    Accept(Vec<ValuationMargin>),
    Reject {
        reason: RejectReason,
        margins: Vec<ValuationMargin>,
    },
    /// Some factor could not be factored within budget.
    Unverifiable { factor: BigInt },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Rule {
    Distinct,
    Legendre,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Distinct => "distinct",
            Rule::Legendre => "legendre",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Outcome {
    Accepted { rule: Rule },
    Rejected(RejectReason),
    Unverifiable {
        #[serde(serialize_with = "as_str")]
        factor: BigInt,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Smoothness {
    /// `max factor / n`
    #[serde(serialize_with = "ratio_str")]
    pub ratio: BigRational,
    /// `log(max factor) / log(n)`
    pub exponent: Exponent,
}

fn ratio_str<S: serde::Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub outcome: Outcome,
    pub margins: Vec<ValuationMargin>,
    pub smoothness: Option<Smoothness>,
}

impl VerifyReport {
    pub fn accepted(&self) -> bool {
        matches!(self.outcome, Outcome::Accepted { .. })
    }
}

fn product_check(cert: &WitnessCertificate) -> Result<(), RejectReason> {
    if !cert.n.is_positive() {
        return Err(RejectReason::NonPositiveN);
    }
    if let Some(f) = cert.factors.iter().find(|f| !f.is_positive()) {
        return Err(RejectReason::NonPositiveFactor { factor: f.clone() });
    }
    let product: BigInt = cert.factors.iter().product();
    let value = cert.poly.evaluate(&cert.n).abs();
    if product != value {
        return Err(RejectReason::ProductMismatch { product, value });
    }
    Ok(())
}

/// Accepts iff the factors multiply to `|P(n)|`, are pairwise distinct, and
/// are all at most `n`.
pub fn verify_distinct(cert: &WitnessCertificate) -> Result<(), RejectReason> {
    product_check(cert)?;
    let mut sorted: Vec<&BigInt> = cert.factors.iter().collect();
    sorted.sort();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(RejectReason::DuplicateFactor { factor: w[0].clone() });
    }
    if let Some(f) = cert.factors.iter().find(|f| *f > &cert.n) {
        return Err(RejectReason::FactorExceedsN { factor: f.clone() });
    }
    Ok(())
}

/// Accepts iff the factors multiply to `|P(n)|` and, for each prime `p` in
/// them, `sum nu_p(factor) <= nu_p(n!)`.
pub fn verify_legendre(cert: &WitnessCertificate, budget: &FactorBudget) -> LegendreOutcome {
    if let Err(reason) = product_check(cert) {
        return LegendreOutcome::Reject { reason, margins: Vec::new() };
    }
    let mut needed: BTreeMap<BigInt, BigInt> = BTreeMap::new();
    for f in &cert.factors {
        match factorize(f, budget) {
            Ok(pf) => {
                for (p, e) in pf.factors {
                    *needed.entry(p).or_insert_with(BigInt::zero) += e;
                }
            }
            Err(FactorError::BudgetExceeded { .. }) => {
                return LegendreOutcome::Unverifiable { factor: f.clone() };
            }
            Err(err) => unreachable!("positive factors always factor: {err}"),
        }
    }
    let mut margins = Vec::with_capacity(needed.len());
    let mut first_bad = None;
    for (prime, needed) in needed {
        let available = nu_p_factorial(&prime, &cert.n).expect("prime and nonnegative n");
        let m = ValuationMargin { prime, needed, available };
        if first_bad.is_none() && m.needed > m.available {
            first_bad = Some(RejectReason::ValuationExceeded {
                prime: m.prime.clone(),
                needed: m.needed.clone(),
                available: m.available.clone(),
            });
        }
        margins.push(m);
    }
    match first_bad {
        Some(reason) => LegendreOutcome::Reject { reason, margins },
        None => LegendreOutcome::Accept(margins),
    }
}

/// The distinct rule, falling back to Legendre only when the sole objection is
/// a repeated factor.
pub fn verify(cert: &WitnessCertificate, budget: &FactorBudget) -> VerifyReport {
    let smoothness = smoothness(cert);
    let (outcome, margins) = match verify_distinct(cert) {
        Ok(()) => (Outcome::Accepted { rule: Rule::Distinct }, Vec::new()),
        Err(RejectReason::DuplicateFactor { .. }) => match verify_legendre(cert, budget) {
            LegendreOutcome::Accept(m) => (Outcome::Accepted { rule: Rule::Legendre }, m),
            LegendreOutcome::Reject { reason, margins } => (Outcome::Rejected(reason), margins),
            LegendreOutcome::Unverifiable { factor } => (Outcome::Unverifiable { factor }, Vec::new()),
        },
        Err(reason) => (Outcome::Rejected(reason), Vec::new()),
    };
    VerifyReport { outcome, margins, smoothness }
}

fn smoothness(cert: &WitnessCertificate) -> Option<Smoothness> {
    let max = cert.factors.iter().max()?;
    if !cert.n.is_positive() || !max.is_positive() {
        return None;
    }
    Some(Smoothness {
        ratio: BigRational::new(max.clone(), cert.n.clone()),
        exponent: certificate_smoothness(cert)?,
    })
}
