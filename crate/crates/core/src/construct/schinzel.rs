//! Quadratic substitutions `g` under which a cubic `f` splits:
//! `f(g(x)) = content * F1(x) * F2(x)` with `F1`, `F2` cubic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::intpoly::{DivisionReport, IntPoly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchinzelPieces {
    pub kappa: BigInt,
    /// `g(x) = A x^2 - B x + 2 kappa`
    pub g: IntPoly,
    pub f1: IntPoly,
    pub f2: IntPoly,
    pub content: BigRational,
    pub a: BigInt,
    pub b: BigInt,
}

/// The closed-form candidate that failed to divide `f(g(x))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InconsistencyReport {
    pub kappa: BigInt,
    pub g: IntPoly,
    pub candidate_f1: IntPoly,
    pub a: BigInt,
    pub b: BigInt,
    /// `b_r^2 - 3 a_r c_r` for the candidate's coefficients.
    pub discriminant: BigInt,
    pub remainder: Vec<BigRational>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchinzelError {
    #[error("expected a cubic with positive coefficients and kappa >= 1")]
    InvalidInput,
    #[error("A vanishes for kappa = {0}, so g is not quadratic")]
    Degenerate(BigInt),
    #[error("candidate factor {} does not divide f(g(x))", .0.candidate_f1)]
    Inconsistent(Box<InconsistencyReport>),
}

/// `(A, B)` for the cubic `a x^3 + b x^2 + c x + d` and parameter `k`.
pub fn leading_data(f: &IntPoly, k: &BigInt) -> (BigInt, BigInt) {
    let (a, b, c, d) = (f.coeff(3), f.coeff(2), f.coeff(1), f.coeff(0));
    let a2 = &a * &a;
    let a3 = &a2 * &a;
    let a4 = &a3 * &a;
    let big_a = BigInt::from(16) * &a4 * k * k * k + BigInt::from(8) * &a3 * &b * k * k
        + BigInt::from(16) * &a3 * &c * k
        - BigInt::from(4) * &a2 * &b * &b * k
        - BigInt::from(16) * &a3 * &d
        + BigInt::from(8) * &a2 * &b * &c
        - BigInt::from(2) * &a * &b * &b * &b;
    let big_b = BigInt::from(12) * &a2 * k * k + BigInt::from(4) * &a * &b * k
        + BigInt::from(4) * &a * &c
        - &b * &b;
    (big_a, big_b)
}

fn substitution(a: &BigInt, b: &BigInt, k: &BigInt) -> IntPoly {
    IntPoly::new(vec![k * 2, -b.clone(), a.clone()])
}

fn is_positive_cubic(f: &IntPoly) -> bool {
    f.deg() == Some(3) && f.all_positive()
}

fn split_with(
    f: &IntPoly,
    k: &BigInt,
    g: IntPoly,
    f1: IntPoly,
    a: BigInt,
    b: BigInt,
) -> Result<SchinzelPieces, SchinzelError> {
    let fg = f.compose(&g);
    let report = |remainder: Vec<BigRational>| {
        let disc = &f1.coeff(2) * &f1.coeff(2) - BigInt::from(3) * f1.coeff(3) * f1.coeff(1);
        SchinzelError::Inconsistent(Box::new(InconsistencyReport {
            kappa: k.clone(),
            g: g.clone(),
            candidate_f1: f1.clone(),
            a: a.clone(),
            b: b.clone(),
            discriminant: disc,
            remainder,
        }))
    };
    let quotient = match fg.exact_divide(&f1).expect("candidate is nonzero") {
        Ok(q) => q,
        Err(DivisionReport::NotAFactor { remainder, .. }) => return Err(report(remainder)),
        Err(DivisionReport::FactorOnlyOverQ { quotient }) => {
            // Rational cofactor: keep it as content times a primitive part.
            let cs = crate::intpoly::content_split_rational(&quotient)
                .expect("quotient of a nonzero polynomial");
            return finish(k, g, f1, cs.primitive, cs.content, a, b, &fg);
        }
    };
    let cs = quotient.content_split().expect("nonzero quotient");
    finish(k, g, f1, cs.primitive, cs.content, a, b, &fg)
}

#[allow(clippy::too_many_arguments)]
fn finish(
    k: &BigInt,
    g: IntPoly,
    f1: IntPoly,
    f2: IntPoly,
    content: BigRational,
    a: BigInt,
    b: BigInt,
    fg: &IntPoly,
) -> Result<SchinzelPieces, SchinzelError> {
    // Re-verify the identity by multiplication over Q.
    let prod = &f1 * &f2;
    let lhs: Vec<BigRational> = fg.coeffs().iter().cloned().map(BigRational::from_integer).collect();
    let rhs: Vec<BigRational> = prod
        .coeffs()
        .iter()
        .map(|c| BigRational::from_integer(c.clone()) * &content)
        .collect();
    assert_eq!(lhs, rhs, "f(g(x)) = content * F1 * F2 must hold exactly");
    Ok(SchinzelPieces {
        kappa: k.clone(),
        g,
        f1,
        f2,
        content,
        a,
        b,
    })
}

/// The split for any cubic `f` with `A != 0`, using the cubic factor
/// `F1 = 4a^2 A x^3 - 4a^2 B x^2 + 2a(6a k + b) x - 1`.
pub fn schinzel_pieces_any(f: &IntPoly, k: &BigInt) -> Result<SchinzelPieces, SchinzelError> {
    if f.deg() != Some(3) {
        return Err(SchinzelError::InvalidInput);
    }
    let (a, b) = leading_data(f, k);
    if a.is_zero() {
        return Err(SchinzelError::Degenerate(k.clone()));
    }
    let (fa, fb) = (f.coeff(3), f.coeff(2));
    let four_a2 = BigInt::from(4) * &fa * &fa;
    let lin = BigInt::from(2) * &fa * (BigInt::from(6) * &fa * k + &fb);
    let f1 = IntPoly::new(vec![BigInt::from(-1), lin, -(&four_a2 * &b), &four_a2 * &a]);
    let g = substitution(&a, &b, k);
    split_with(f, k, g, f1, a, b)
}

/// [`schinzel_pieces_any`] restricted to positive-coefficient cubics and
/// `kappa >= 1`.
pub fn schinzel_pieces(f: &IntPoly, k: &BigInt) -> Result<SchinzelPieces, SchinzelError> {
    if !is_positive_cubic(f) || !k.is_positive() {
        return Err(SchinzelError::InvalidInput);
    }
    schinzel_pieces_any(f, k)
}

/// Tries the closed form `F1 = A x^3 - B x^2 + (3k + 2ab) x - 1`. It never
/// divides `f(g(x))` for the cubics we have tried; the report carries the
/// candidate, its discriminant `b_r^2 - 3 a_r c_r`, and the remainder.
pub fn schinzel_pieces_displayed(f: &IntPoly, k: &BigInt) -> Result<SchinzelPieces, SchinzelError> {
    if !is_positive_cubic(f) || !k.is_positive() {
        return Err(SchinzelError::InvalidInput);
    }
    let (a, b) = leading_data(f, k);
    if a.is_zero() {
        return Err(SchinzelError::Degenerate(k.clone()));
    }
    let lin = BigInt::from(3) * k + BigInt::from(2) * f.coeff(3) * f.coeff(2);
    let f1 = IntPoly::new(vec![BigInt::from(-1), lin, -b.clone(), a.clone()]);
    let g = substitution(&a, &b, k);
    split_with(f, k, g, f1, a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn unit_cubic_kappa_one() {
        let f = p(&[1, 1, 1, 1]);
        let pieces = schinzel_pieces(&f, &BigInt::one()).unwrap();
        assert_eq!(pieces.a, BigInt::from(26));
        assert_eq!(pieces.b, BigInt::from(19));
        assert_eq!(pieces.g, p(&[2, -19, 26]));
        assert_eq!(pieces.f1, p(&[-1, 14, -76, 104]));
        assert_eq!(pieces.f2, p(&[-15, 113, -247, 169]));
        assert_eq!(pieces.content, BigRational::one());
    }

    #[test]
    fn displayed_candidate_is_reported() {
        let f = p(&[1, 1, 1, 1]);
        match schinzel_pieces_displayed(&f, &BigInt::one()) {
            Err(SchinzelError::Inconsistent(r)) => {
                assert_eq!(r.candidate_f1, p(&[-1, 5, -19, 26]));
                assert_eq!(r.discriminant, BigInt::from(-29));
                let rem: Vec<BigRational> =
                    [3, 150, -312].iter().map(|&v| BigRational::from_integer(v.into())).collect();
                assert_eq!(r.remainder, rem);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn identity_holds_pointwise() {
        let f = p(&[4, 2, 1, 1]);
        for k in 1..=5 {
            let pc = schinzel_pieces(&f, &BigInt::from(k)).unwrap();
            for x in 0..=6 {
                let x = BigInt::from(x);
                let lhs = BigRational::from_integer(f.evaluate(&pc.g.evaluate(&x)));
                let rhs = BigRational::from_integer(pc.f1.evaluate(&x) * pc.f2.evaluate(&x)) * &pc.content;
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(schinzel_pieces(&p(&[1, 1, 1]), &BigInt::one()), Err(SchinzelError::InvalidInput));
        assert_eq!(schinzel_pieces(&p(&[1, -1, 1, 1]), &BigInt::one()), Err(SchinzelError::InvalidInput));
        assert_eq!(schinzel_pieces(&p(&[1, 1, 1, 1]), &BigInt::zero()), Err(SchinzelError::InvalidInput));
    }
}
