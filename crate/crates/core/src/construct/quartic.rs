//! Products of two quadratics.
//!
//! After the substitution `x -> m + c x` with `c = P1(m)` the factors become
//! `c R(x)` with `R = a x^2 + b x + 1` and `Q = d x^2 + e x + f`. Writing
//! `n = y + lam Q(y)` with `y = k + f`, `lam = l f`, and `n = u + v R(u)` with
//! `v = f + lam Q(f)`, the two forms agree exactly when
//! `A k^2 + B k = C u^2 + D u`, `A = lam d`, `B = 1 + lam Q'(f)`, `C = a v`,
//! `D = 1 + b v`; Pell solutions give `k = BCs^2 + Drs`, `u = Brs + ADs^2`.

use indexmap::IndexMap;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{
    digits_estimate, product, settle_mode, BudgetReport, ClassTag, ConstructBudget,
    ConstructError, PellBlock, WitnessCertificate,
};
use crate::intpoly::IntPoly;
use crate::numtheory::{factorize, is_perfect_square};
use crate::pell::{fundamental_solution, PellStream};

/// Normalized data for one choice of `l`.
#[derive(Debug, Clone)]
pub struct BiquadraticSetup {
    pub m: BigInt,
    pub c: BigInt,
    pub r: IntPoly,
    pub q: IntPoly,
    pub l: BigInt,
    pub p: BigInt,
    pub lam: BigInt,
    pub v: BigInt,
    pub coeffs: [BigInt; 4],
    pub c_q: BigInt,
    pub c_r: BigInt,
    pub stream: PellStream,
}

/// One Pell index worked out in normalized coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiquadraticCandidate {
    pub k: BigInt,
    pub u: BigInt,
    /// `n` before undoing the normalization
    pub n_norm: BigInt,
    pub n: BigInt,
    /// `Q(k + f)` and `R(u)`
    pub q1: BigInt,
    pub r1: BigInt,
    /// `Q(n_norm) / q1` and `R(n_norm) / r1`
    pub q2: BigInt,
    pub r2: BigInt,
}

impl BiquadraticSetup {
    pub fn candidate(&self, r: &BigInt, s: &BigInt) -> BiquadraticCandidate {
        let [ca, cb, cc, cd] = &self.coeffs;
        let rs = r * s;
        let ss = s * s;
        let k = cb * cc * &ss + cd * &rs;
        let u = cb * &rs + ca * cd * &ss;
        debug_assert_eq!(ca * &k * &k + cb * &k, cc * &u * &u + cd * &u);
        let y = &k + self.q.coeff(0);
        let q1 = self.q.evaluate(&y);
        let n_norm = &y + &self.lam * &q1;
        let r1 = self.r.evaluate(&u);
        assert_eq!(n_norm, &u + &self.v * &r1, "both forms of n must agree");
        let qn = self.q.evaluate(&n_norm);
        let rn = self.r.evaluate(&n_norm);
        assert!((&qn % &q1).is_zero(), "Q1(k) divides Q(n)");
        assert!((&rn % &r1).is_zero(), "R1(u) divides R(n)");
        let n = &self.m + &self.c * &n_norm;
        BiquadraticCandidate { k, u, q2: qn / &q1, r2: rn / &r1, n_norm, n, q1, r1 }
    }
}

/// Least `m >= 0` such that both factors, after `x -> m + P1(m) x`, have
/// positive coefficients.
fn normalize(p1: &IntPoly, p2: &IntPoly) -> Option<(BigInt, BigInt, IntPoly, IntPoly)> {
    for m in 0..100_000u64 {
        let m = BigInt::from(m);
        let c = p1.evaluate(&m);
        if !c.is_positive() {
            continue;
        }
        let sub = IntPoly::new(vec![m.clone(), c.clone()]);
        let r_scaled = p1.compose(&sub);
        let r = r_scaled.div_exact_or_panic(&IntPoly::constant(c.clone()));
        let q = p2.compose(&sub);
        if r.all_positive() && q.all_positive() && r.deg() == Some(2) && q.deg() == Some(2) {
            debug_assert!(r.coeff(0).is_one());
            return Some((m, c, r, q));
        }
    }
    None
}

/// Cofactor constant terms: `Q(v)/Q(f)` and `R(v)`.
fn cofactor_constants(r: &IntPoly, q: &IntPoly, f: &BigInt, v: &BigInt) -> (BigInt, BigInt) {
    let qf = q.evaluate(f);
    let qv = q.evaluate(v);
    debug_assert!((&qv % &qf).is_zero());
    (qv / qf, r.evaluate(v))
}

/// A prime `p > bound` with `p || x`, the least such.
fn simple_prime_above(x: &BigInt, bound: &BigInt, budget: &ConstructBudget) -> Option<BigInt> {
    let f = factorize(x, &budget.schur.factor).ok()?;
    f.factors
        .into_iter()
        .find(|(p, e)| p > bound && *e == 1)
        .map(|(p, _)| p)
}

/// Normalized factors and the quantities that do not depend on `l`.
#[derive(Debug, Clone)]
pub struct BiquadraticPlan {
    pub m: BigInt,
    pub c: BigInt,
    pub r: IntPoly,
    pub q: IntPoly,
    qf: BigInt,
    bound: BigInt,
    dq_f: BigInt,
}

impl BiquadraticPlan {
    /// `None` if no shift below 100000 makes both factors positive.
    pub fn new(p1: &IntPoly, p2: &IntPoly) -> Option<Self> {
        let (m, c, r, q) = normalize(p1, p2)?;
        let f = q.coeff(0);
        let qf = q.evaluate(&f);
        let bound = (r.coeff(2) * q.coeff(2) * &f).max(qf.clone());
        let dq_f = BigInt::from(2) * q.coeff(2) * &f + q.coeff(1);
        Some(BiquadraticPlan { m, c, r, q, qf, bound, dq_f })
    }

    /// `Ok(None)` when `l` has no admissible prime, `Err` when Pell blocks it.
    pub fn setup(&self, l: u64, budget: &ConstructBudget) -> Result<Option<BiquadraticSetup>, PellBlock> {
        let l = BigInt::from(l);
        let (a, b) = (self.r.coeff(2), self.r.coeff(1));
        let (d, f) = (self.q.coeff(2), self.q.coeff(0));
        // nu_p(l Q(f) + 1) = 1 for a prime p above max(adf, Q(f))
        let Some(p) = simple_prime_above(&(&l * &self.qf + 1u32), &self.bound, budget) else {
            return Ok(None);
        };
        let lam = &l * &f;
        let v = &f + &lam * &self.qf;
        let coeffs = [&lam * &d, BigInt::one() + &lam * &self.dq_f, &a * &v, BigInt::one() + &b * &v];
        let d0 = &coeffs[0] * &coeffs[2];
        debug_assert!(!is_perfect_square(&d0));
        let fund = fundamental_solution(&d0, budget.pell_digits).map_err(|err| PellBlock {
            kappa: BigInt::zero(),
            l: l.clone(),
            d: d0.clone(),
            reason: err.to_string(),
        })?;
        let (c_q, c_r) = cofactor_constants(&self.r, &self.q, &f, &v);
        Ok(Some(BiquadraticSetup {
            m: self.m.clone(),
            c: self.c.clone(),
            r: self.r.clone(),
            q: self.q.clone(),
            l,
            p,
            lam,
            v,
            coeffs,
            c_q,
            c_r,
            stream: PellStream::new(&d0, fund).expect("fundamental solution is valid"),
        }))
    }
}

/// Certificates for `P = P1 * P2` with `P1`, `P2` quadratics with positive
/// leading coefficients. The factor list is
/// `[c c_q c_r, Q1(k), R1(u), Q2/c_q, R2/c_r]`.
pub fn construct_quartic_biquadratic(
    p1: &IntPoly,
    p2: &IntPoly,
    count: usize,
    budget: &ConstructBudget,
) -> Result<Vec<WitnessCertificate>, ConstructError> {
    for (name, f) in [("first", p1), ("second", p2)] {
        if f.deg() != Some(2) || !f.leading().is_some_and(|c| c.is_positive()) {
            return Err(ConstructError::InvalidInput(format!(
                "{name} factor must be quadratic with positive leading coefficient, got {f}"
            )));
        }
    }
    let poly = p1 * p2;
    let mut blocks = Vec::new();
    let mut out = Vec::new();
    let norm = BiquadraticPlan::new(p1, p2).ok_or_else(|| {
        ConstructError::InvalidInput("factors could not be normalized to positive coefficients".into())
    })?;
    for l in 1..=budget.max_l {
        let st = match norm.setup(l, budget) {
            Ok(Some(st)) => st,
            Ok(None) => continue,
            Err(block) => {
                blocks.push(block);
                continue;
            }
        };
        let modulus = &st.c_q * &st.c_r;
        let indices = match st.stream.indices_with_s_divisible(&modulus) {
            Ok(it) => it,
            Err(_) => {
                blocks.push(PellBlock {
                    kappa: BigInt::zero(),
                    l: st.l.clone(),
                    d: st.stream.d().clone(),
                    reason: format!("modulus c_q c_r = {modulus} out of range"),
                });
                continue;
            }
        };
        for index in indices.skip(1).take(budget.max_index as usize) {
            let (r, s) = st.stream.pair_at(index);
            if digits_estimate(&s) * 4 > budget.max_n_digits {
                blocks.push(PellBlock {
                    kappa: BigInt::zero(),
                    l: st.l.clone(),
                    d: st.stream.d().clone(),
                    reason: format!("index {index} exceeds the size budget"),
                });
                break;
            }
            let cand = st.candidate(&r, &s);
            assert!((&cand.q2 % &st.c_q).is_zero() && (&cand.r2 % &st.c_r).is_zero());
            let n = cand.n;
            let factors = vec![&st.c * &st.c_q * &st.c_r, cand.q1, cand.r1, cand.q2 / &st.c_q, cand.r2 / &st.c_r];
            assert_eq!(product(&factors), poly.evaluate(&n).abs(), "factor product must equal |P(n)|");
            let Some((factors, mode)) = settle_mode(factors, &n) else {
                continue;
            };
            let mut params = IndexMap::new();
            params.insert("l".to_string(), st.l.to_string());
            params.insert("p".to_string(), st.p.to_string());
            params.insert("v".to_string(), st.v.to_string());
            params.insert("index".to_string(), index.to_string());
            if !st.m.is_zero() {
                params.insert("shift".to_string(), st.m.to_string());
            }
            if !st.c.is_one() {
                params.insert("scale".to_string(), st.c.to_string());
            }
            out.push(WitnessCertificate {
                class: ClassTag::QuarticBiquadratic,
                poly: poly.clone(),
                n,
                factors,
                params,
                mode,
            });
            if out.len() >= count {
                return Ok(out);
            }
        }
    }
    Err(ConstructError::Budget(Box::new(BudgetReport {
        stage: "quartic_biquadratic".into(),
        detail: format!("{} of {count} certificates; l exhausted up to {}", out.len(), budget.max_l),
        pell_blocks: blocks,
        partial: out,
    })))
}
