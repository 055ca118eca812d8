//! Cubics, and quartics with a linear factor, through two rounds of the
//! Schinzel split and a Pell equation tying the two substitutions together.
//!
//! With `P(Q(x)) = c0 R(x) S(x)`, `R(g(x)) = cR R1(x) R2(x)` and
//! `S(h(x)) = cS S1(x) S2(x)`, every solution of `g(u) = h(v)` gives
//! `P(Q(t)) = c0 cR cS R1(u) R2(u) S1(v) S2(v)` at `t = g(u)`.

use indexmap::IndexMap;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{
    absorb_content, digits_estimate, product, settle_mode, BudgetReport, ClassTag,
    ConstructBudget, ConstructError, PellBlock, SchinzelError, SchinzelPieces, WitnessCertificate,
};
use super::schinzel::{schinzel_pieces, schinzel_pieces_any};
use crate::intpoly::IntPoly;
use crate::numtheory::is_perfect_square;
use crate::pell::{fundamental_solution, PellStream};

/// Everything fixed before the Pell stream is walked.
#[derive(Debug, Clone)]
pub struct CubicSetup {
    pub shift: BigInt,
    pub shifted: IntPoly,
    pub top: SchinzelPieces,
    pub l: BigInt,
    pub r_pieces: SchinzelPieces,
    pub s_pieces: SchinzelPieces,
    pub stream: PellStream,
    pub content: BigRational,
}

/// One point `(u, v)` on `g(u) = h(v)` and the values it produces.
#[derive(Debug, Clone)]
pub struct CubicCandidate {
    pub u: BigInt,
    pub v: BigInt,
    pub t: BigInt,
    /// `Q(t)`, a witness for the shifted polynomial.
    pub n_shifted: BigInt,
    /// `|R1(u)|, |R2(u)|, |S1(v)|, |S2(v)|`
    pub raw: [BigInt; 4],
}

impl CubicSetup {
    pub fn a(&self) -> &BigInt {
        &self.r_pieces.a
    }
    pub fn b(&self) -> &BigInt {
        &self.r_pieces.b
    }
    pub fn c(&self) -> &BigInt {
        &self.s_pieces.a
    }
    pub fn d(&self) -> &BigInt {
        &self.s_pieces.b
    }

    /// `u = -BCs^2 - Drs`, `v = -Brs - ADs^2`, with `g(u) = h(v)` asserted.
    pub fn candidate(&self, r: &BigInt, s: &BigInt) -> CubicCandidate {
        let (a, b, c, d) = (self.a(), self.b(), self.c(), self.d());
        let rs = r * s;
        let ss = s * s;
        let u = -(b * c * &ss) - d * &rs;
        let v = -(b * &rs) - a * d * &ss;
        let t = self.r_pieces.g.evaluate(&u);
        assert_eq!(t, self.s_pieces.g.evaluate(&v), "g(u) = h(v) must hold");
        let n_shifted = self.top.g.evaluate(&t);
        let raw = [
            self.r_pieces.f1.evaluate(&u).abs(),
            self.r_pieces.f2.evaluate(&u).abs(),
            self.s_pieces.f1.evaluate(&v).abs(),
            self.s_pieces.f2.evaluate(&v).abs(),
        ];
        CubicCandidate { u, v, t, n_shifted, raw }
    }
}

fn validate_cubic(p: &IntPoly) -> Result<(), ConstructError> {
    if p.deg() != Some(3) || !p.leading().is_some_and(|c| c.is_positive()) {
        return Err(ConstructError::InvalidInput(format!(
            "cubic factor must have degree 3 and positive leading coefficient, got {p}"
        )));
    }
    Ok(())
}

/// Least `kappa >= 1` whose split has `A > 0`.
pub fn top_level_pieces(shifted: &IntPoly, max_kappa: u64) -> Result<SchinzelPieces, ConstructError> {
    let mut last = None;
    for k in 1..=max_kappa {
        match schinzel_pieces(shifted, &BigInt::from(k)) {
            Ok(p) if p.a.is_positive() => return Ok(p),
            Ok(_) => {}
            Err(e @ SchinzelError::InvalidInput) => return Err(e.into()),
            Err(e) => last = Some(e),
        }
    }
    Err(match last {
        Some(e) => e.into(),
        None => ConstructError::InvalidInput(format!("no kappa <= {max_kappa} gives A > 0")),
    })
}

/// Walks `l = l_from, l_from + 1, ...` for a setup whose Pell equation solves
/// within budget; failures are recorded in `blocks`.
fn next_setup(
    shift: &BigInt,
    shifted: &IntPoly,
    top: &SchinzelPieces,
    l_from: u64,
    budget: &ConstructBudget,
    blocks: &mut Vec<PellBlock>,
) -> Option<(u64, CubicSetup)> {
    for l in l_from..=budget.max_l {
        let lb = BigInt::from(l);
        let (Ok(rp), Ok(sp)) = (
            schinzel_pieces_any(&top.f1, &lb),
            schinzel_pieces_any(&top.f2, &lb),
        ) else {
            continue;
        };
        if !(rp.a.is_positive() && rp.b.is_positive() && sp.a.is_positive() && sp.b.is_positive()) {
            continue;
        }
        let d0 = &rp.a * &sp.a;
        if is_perfect_square(&d0) {
            continue;
        }
        match fundamental_solution(&d0, budget.pell_digits) {
            Ok(fund) => {
                let stream = PellStream::new(&d0, fund).expect("fundamental solution is valid");
                let content = &top.content * &rp.content * &sp.content;
                return Some((
                    l,
                    CubicSetup {
                        shift: shift.clone(),
                        shifted: shifted.clone(),
                        top: top.clone(),
                        l: lb,
                        r_pieces: rp,
                        s_pieces: sp,
                        stream,
                        content,
                    },
                ));
            }
            Err(e) => blocks.push(PellBlock {
                kappa: top.kappa.clone(),
                l: lb,
                d: d0,
                reason: e.to_string(),
            }),
        }
    }
    None
}

fn budget_failure(
    stage: &str,
    detail: String,
    blocks: Vec<PellBlock>,
    partial: Vec<WitnessCertificate>,
) -> ConstructError {
    ConstructError::Budget(Box::new(BudgetReport {
        stage: stage.to_string(),
        detail,
        pell_blocks: blocks,
        partial,
    }))
}

fn base_params(setup: &CubicSetup) -> IndexMap<String, String> {
    let mut params = IndexMap::new();
    params.insert("kappa".to_string(), setup.top.kappa.to_string());
    params.insert("l".to_string(), setup.l.to_string());
    params
}

/// Certificates for a cubic `P` with positive leading coefficient. Inputs
/// whose coefficients are not all positive are shifted first; the shift is
/// recorded and the certificate's `n` refers to the original `P`.
pub fn construct_cubic(
    p: &IntPoly,
    count: usize,
    budget: &ConstructBudget,
) -> Result<Vec<WitnessCertificate>, ConstructError> {
    validate_cubic(p)?;
    let (shift, shifted) = p.shift_to_positive().expect("validated");
    let top = top_level_pieces(&shifted, 50)?;
    let mut blocks = Vec::new();
    let mut out = Vec::new();
    let mut l_from = 1;
    while let Some((l, setup)) = next_setup(&shift, &shifted, &top, l_from, budget, &mut blocks) {
        l_from = l + 1;
        let mut stream = setup.stream.clone();
        stream.next(); // index 0 is the trivial solution u = v = 0
        for index in 1..=budget.max_index {
            let (r, s) = stream.next().expect("stream is infinite");
            if digits_estimate(&s) * 8 > budget.max_n_digits {
                break;
            }
            let cand = setup.candidate(&r, &s);
            let n = &cand.n_shifted + &shift;
            let Some(factors) = absorb_content(cand.raw.to_vec(), &setup.content, &n) else {
                continue;
            };
            assert_eq!(product(&factors), p.evaluate(&n).abs(), "factor product must equal |P(n)|");
            let Some((factors, mode)) = settle_mode(factors, &n) else {
                continue;
            };
            let mut params = base_params(&setup);
            params.insert("index".to_string(), index.to_string());
            if !shift.is_zero() {
                params.insert("shift".to_string(), shift.to_string());
            }
            out.push(WitnessCertificate {
                class: ClassTag::Cubic,
                poly: p.clone(),
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
    Err(budget_failure(
        "cubic",
        format!(
            "{} of {count} certificates; l exhausted up to {} (kappa {})",
            out.len(),
            budget.max_l,
            top.kappa
        ),
        blocks,
        out,
    ))
}

/// Certificates for `P = cubic * (e x + f)`: the cubic pipeline restricted to
/// Pell indices with `p | s`, `p = e Q(g(0)) + f`, so that `p` divides the
/// linear factor's value.
pub fn construct_quartic_cubic_linear(
    cubic: &IntPoly,
    linear: &IntPoly,
    count: usize,
    budget: &ConstructBudget,
) -> Result<Vec<WitnessCertificate>, ConstructError> {
    validate_cubic(cubic)?;
    if linear.deg() != Some(1) || !linear.leading().is_some_and(|c| c.is_positive()) {
        return Err(ConstructError::InvalidInput(format!(
            "linear factor must have degree 1 and positive leading coefficient, got {linear}"
        )));
    }
    let poly = cubic * linear;
    let (y1, _) = cubic.shift_to_positive().expect("validated");
    let (y2, _) = linear.shift_to_positive().expect("validated");
    let shift = y1.max(y2);
    let shifted = cubic.shift(&shift);
    let lin_s = linear.shift(&shift);
    let (e, f) = (lin_s.coeff(1), lin_s.coeff(0));
    let top = top_level_pieces(&shifted, 50)?;
    let mut blocks = Vec::new();
    let mut out = Vec::new();
    let mut l_from = 1;
    while let Some((l, setup)) = next_setup(&shift, &shifted, &top, l_from, budget, &mut blocks) {
        l_from = l + 1;
        let g0 = setup.r_pieces.g.evaluate(&BigInt::zero());
        let p = &e * setup.top.g.evaluate(&g0) + &f;
        let Ok(indices) = setup.stream.indices_with_s_divisible(&p) else {
            blocks.push(PellBlock {
                kappa: top.kappa.clone(),
                l: setup.l.clone(),
                d: setup.stream.d().clone(),
                reason: format!("modulus p = {p} out of range"),
            });
            continue;
        };
        for index in indices.skip(1).take(budget.max_index as usize) {
            let (r, s) = setup.stream.pair_at(index);
            if digits_estimate(&s) * 8 > budget.max_n_digits {
                blocks.push(PellBlock {
                    kappa: top.kappa.clone(),
                    l: setup.l.clone(),
                    d: setup.stream.d().clone(),
                    reason: format!("index {index} with p = {p} exceeds the size budget"),
                });
                break;
            }
            let cand = setup.candidate(&r, &s);
            assert!((&cand.u % &p).is_zero(), "p | u by choice of index");
            let lin_value = &e * &cand.n_shifted + &f;
            assert!((&lin_value % &p).is_zero(), "p divides the linear value");
            let n = &cand.n_shifted + &shift;
            let mut raw = vec![p.clone(), &lin_value / &p];
            raw.extend(cand.raw.iter().cloned());
            let Some(factors) = absorb_content(raw, &setup.content, &n) else {
                continue;
            };
            assert_eq!(product(&factors), poly.evaluate(&n).abs(), "factor product must equal |P(n)|");
            let Some((factors, mode)) = settle_mode(factors, &n) else {
                continue;
            };
            let mut params = base_params(&setup);
            params.insert("p".to_string(), p.to_string());
            params.insert("index".to_string(), index.to_string());
            if !shift.is_zero() {
                params.insert("shift".to_string(), shift.to_string());
            }
            out.push(WitnessCertificate {
                class: ClassTag::QuarticCubicLinear,
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
    Err(budget_failure(
        "quartic_cubic_linear",
        format!("{} of {count} certificates; l exhausted up to {}", out.len(), budget.max_l),
        blocks,
        out,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::Mode;
    use num_traits::One;

    #[test]
    fn small_instance_emits() {
        let p = IntPoly::from_i64(&[4, 2, 1, 1]);
        let certs = construct_cubic(&p, 2, &ConstructBudget::default()).unwrap();
        assert_eq!(certs.len(), 2);
        for c in &certs {
            assert_eq!(c.mode, Mode::Distinct);
            assert_eq!(product(&c.factors), p.evaluate(&c.n));
            assert!(c.factors.iter().all(|f| f < &c.n));
            assert_eq!(c.params["kappa"], "1");
            assert_eq!(c.params["l"], "12");
        }
    }

    #[test]
    fn unit_cubic_reports_budget() {
        let p = IntPoly::from_i64(&[1, 1, 1, 1]);
        let budget = ConstructBudget { max_l: 3, ..Default::default() };
        match construct_cubic(&p, 1, &budget) {
            Err(ConstructError::Budget(r)) => {
                assert!(!r.pell_blocks.is_empty());
                assert!(r.pell_blocks.iter().all(|b| b.kappa == BigInt::one()));
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
