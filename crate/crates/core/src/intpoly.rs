//! Dense univariate polynomials with arbitrary-precision integer coefficients.
//!
//! Every construction in the crate is written in this ring: the polynomial
//! under study, the substitutions that make it split, and the special
//! families (cyclotomic, Chebyshev) all live in [`IntPoly`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Polynomial with coefficients stored in ascending degree order.
///
/// The highest stored coefficient is always nonzero; the zero polynomial
/// is the empty vector and has no degree.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

/// Degree of a polynomial. The zero polynomial is `NegInfinity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyParseError {
    #[error("empty polynomial string")]
    Empty,
    #[error("invalid coefficient {0:?}")]
    BadCoefficient(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("content of the zero polynomial is undefined")]
    ZeroPolynomial,
    #[error("polynomial must have degree >= 1 and positive leading coefficient")]
    NotPositiveNonconstant,
}

/// Why an exact division did not produce an integer quotient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DivisionReport {
    /// Nonzero remainder over Q.
    NotAFactor {
        quotient: Vec<BigRational>,
        remainder: Vec<BigRational>,
    },
    /// Divides over Q, but the quotient has non-integral coefficients.
    FactorOnlyOverQ { quotient: Vec<BigRational> },
}

/// `content * primitive` reproduces the split polynomial; `primitive`
/// has coprime coefficients and positive leading coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContentSplit {
    pub content: BigRational,
    pub primitive: IntPoly,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        IntPoly::from_i64(&[0, 1])
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::new(vec![c])
    }

    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `c * x^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPoly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    /// Degree as a plain integer, `None` for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Exact value at `x` (Horner).
    pub fn evaluate(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn evaluate_i64(&self, x: i64) -> BigInt {
        self.evaluate(&BigInt::from(x))
    }

    /// `self(inner(x))`
    pub fn compose(&self, inner: &IntPoly) -> IntPoly {
        let mut acc = IntPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &IntPoly::constant(c.clone());
        }
        acc
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// `self(x + y)`
    pub fn shift(&self, y: &BigInt) -> IntPoly {
        self.compose(&IntPoly::new(vec![y.clone(), BigInt::one()]))
    }

    pub fn all_positive(&self) -> bool {
        !self.is_zero() && self.coeffs.iter().all(|c| c.is_positive())
    }

    /// Divides exactly, returning the integer quotient, or a report with the
    /// rational quotient (and remainder, if any).
    pub fn exact_divide(&self, den: &IntPoly) -> Result<Result<IntPoly, DivisionReport>, PolyError> {
        if den.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Ok(IntPoly::zero()));
        }
        // Integer long division when the leading coefficient divides every step;
        // otherwise fall back to rational arithmetic for the report.
        if let Some(q) = self.try_integer_divide(den) {
            return Ok(Ok(q));
        }
        let (q, r) = rational_divmod(&to_rational(self), &to_rational(den));
        if r.is_empty() {
            if q.iter().all(|c| c.is_integer()) {
                return Ok(Ok(IntPoly::new(q.into_iter().map(|c| c.to_integer()).collect())));
            }
            Ok(Err(DivisionReport::FactorOnlyOverQ { quotient: q }))
        } else {
            Ok(Err(DivisionReport::NotAFactor { quotient: q, remainder: r }))
        }
    }

    fn try_integer_divide(&self, den: &IntPoly) -> Option<IntPoly> {
        let dn = den.coeffs.len();
        let nn = self.coeffs.len();
        if nn < dn {
            return None;
        }
        let lead = den.leading()?;
        let mut rem = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); nn - dn + 1];
        for i in (0..q.len()).rev() {
            let top = &rem[i + dn - 1];
            if top.is_zero() {
                continue;
            }
            let (c, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, d) in den.coeffs.iter().enumerate() {
                rem[i + j] -= &c * d;
            }
            q[i] = c;
        }
        if rem.iter().all(|c| c.is_zero()) {
            Some(IntPoly::new(q))
        } else {
            None
        }
    }

    /// Divides exactly by a polynomial, panicking if the division is not exact
    /// over Z. For internal identities that are known to hold.
    pub(crate) fn div_exact_or_panic(&self, den: &IntPoly) -> IntPoly {
        match self.exact_divide(den) {
            Ok(Ok(q)) => q,
            other => panic!("expected exact division of {self} by {den}, got {other:?}"),
        }
    }

    /// Splits off the content, normalized so the primitive part has a positive
    /// leading coefficient.
    pub fn content_split(&self) -> Result<ContentSplit, PolyError> {
        content_split_rational(&to_rational(self))
    }

    /// Least `y >= 0` such that every coefficient of `self(x + y)` is positive.
    pub fn shift_to_positive(&self) -> Result<(BigInt, IntPoly), PolyError> {
        match (self.deg(), self.leading()) {
            (Some(d), Some(lc)) if d >= 1 && lc.is_positive() => {}
            _ => return Err(PolyError::NotPositiveNonconstant),
        }
        if self.all_positive() {
            return Ok((BigInt::zero(), self.clone()));
        }
        // Positivity of all Taylor coefficients is upward closed in y, so
        // exponential search followed by bisection finds the least shift.
        let ok = |y: &BigInt| self.shift(y).all_positive();
        let mut lo = BigInt::zero();
        let mut hi = BigInt::one();
        while !ok(&hi) {
            lo = hi.clone();
            hi <<= 1;
        }
        while &hi - &lo > BigInt::one() {
            let mid: BigInt = (&lo + &hi) >> 1;
            if ok(&mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let shifted = self.shift(&hi);
        Ok((hi, shifted))
    }

    /// Integer polynomial `2^deg * self(x/2)`-style rescaling: returns
    /// `self(x / k) * k^deg` when that is integral, i.e. coefficient `c_i`
    /// becomes `c_i * k^(deg-i)`.
    pub fn rescale_argument(&self, k: &BigInt) -> IntPoly {
        let Some(d) = self.deg() else {
            return IntPoly::zero();
        };
        let mut out = Vec::with_capacity(d + 1);
        for (i, c) in self.coeffs.iter().enumerate() {
            out.push(c * num_traits::pow(k.clone(), d - i));
        }
        IntPoly::new(out)
    }
}

fn to_rational(p: &IntPoly) -> Vec<BigRational> {
    p.coeffs.iter().cloned().map(BigRational::from_integer).collect()
}

fn trim_rational(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// Long division over Q; both inputs trimmed, divisor nonzero.
pub(crate) fn rational_divmod(
    num: &[BigRational],
    den: &[BigRational],
) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem: Vec<BigRational> = num.to_vec();
    trim_rational(&mut rem);
    let dn = den.len();
    if rem.len() < dn {
        return (Vec::new(), rem);
    }
    let lead = &den[dn - 1];
    let mut q = vec![BigRational::zero(); rem.len() - dn + 1];
    for i in (0..q.len()).rev() {
        let c = &rem[i + dn - 1] / lead;
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            rem[i + j] = &rem[i + j] - &c * d;
        }
        q[i] = c;
    }
    trim_rational(&mut q);
    trim_rational(&mut rem);
    (q, rem)
}

/// Content split of a polynomial with rational coefficients.
pub fn content_split_rational(coeffs: &[BigRational]) -> Result<ContentSplit, PolyError> {
    let mut v = coeffs.to_vec();
    trim_rational(&mut v);
    let Some(lead) = v.last() else {
        return Err(PolyError::ZeroPolynomial);
    };
    let lead_negative = lead.is_negative();
    let mut den_lcm = BigInt::one();
    for c in &v {
        den_lcm = den_lcm.lcm(c.denom());
    }
    let scaled: Vec<BigInt> = v
        .iter()
        .map(|c| (c * BigRational::from_integer(den_lcm.clone())).to_integer())
        .collect();
    let mut g = BigInt::zero();
    for c in &scaled {
        g = g.gcd(c);
    }
    if lead_negative {
        g = -g;
    }
    let primitive = IntPoly::new(scaled.iter().map(|c| c / &g).collect());
    Ok(ContentSplit {
        content: BigRational::new(g, den_lcm),
        primitive,
    })
}

impl ContentSplit {
    /// `content * primitive` as a rational polynomial.
    pub fn reassemble(&self) -> Vec<BigRational> {
        self.primitive
            .coeffs()
            .iter()
            .map(|c| BigRational::from_integer(c.clone()) * &self.content)
            .collect()
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl fmt::Display for IntPoly {
    /// Human form, highest degree first: `x^4 - x^2 + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let show_mag = i == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl IntPoly {
    /// Comma-separated ascending coefficients, the CLI/JSON text form.
    pub fn to_coeff_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl FromStr for IntPoly {
    type Err = PolyParseError;

    /// Parses `"c0,c1,..."`; `"0"` is the zero polynomial.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(PolyParseError::Empty);
        }
        let coeffs = s
            .split(',')
            .map(|t| {
                let t = t.trim();
                t.parse::<BigInt>()
                    .map_err(|_| PolyParseError::BadCoefficient(t.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IntPoly::new(coeffs))
    }
}
