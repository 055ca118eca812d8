//! `x^m - 1` and `Phi_m(x)` at `n = s^N`, `N` a product of consecutive primes.

use indexmap::IndexMap;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use super::{product, select_primes, settle_mode, ClassTag, ConstructBudget, ConstructError, WitnessCertificate};
use crate::intpoly::IntPoly;
use crate::numtheory::{divisors_u64, MertensSelection};
use crate::specialpoly::{cyclotomic, cyclotomic_value, euler_phi};

fn join(primes: &[u64]) -> String {
    primes.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

/// `N` as a machine integer, with `s^N` checked against the size budget.
fn exponent(
    stage: &str,
    sel: &MertensSelection,
    s: &BigInt,
    budget: &ConstructBudget,
    done: &[WitnessCertificate],
) -> Result<u64, ConstructError> {
    let too_big = || {
        ConstructError::budget(
            stage,
            format!(
                "primes {} give s^N with more than {} digits",
                join(&sel.primes),
                budget.max_n_digits
            ),
            done.to_vec(),
        )
    };
    let big_n = sel.primorial().to_u64().ok_or_else(too_big)?;
    let digits = big_n as f64 * (s.bits() as f64 - 1.0).max(1.0) * std::f64::consts::LOG10_2;
    if digits > budget.max_n_digits as f64 {
        return Err(too_big());
    }
    Ok(big_n)
}

fn check_s(s_values: &[BigInt]) -> Result<(), ConstructError> {
    match s_values.iter().find(|s| *s < &BigInt::from(2)) {
        Some(s) => Err(ConstructError::InvalidInput(format!("s must be at least 2, got {s}"))),
        None => Ok(()),
    }
}

fn base_params(sel: &MertensSelection, big_n: u64, s: &BigInt) -> IndexMap<String, String> {
    let mut params = IndexMap::new();
    params.insert("s".to_string(), s.to_string());
    params.insert("primes".to_string(), join(&sel.primes));
    params.insert("N".to_string(), big_n.to_string());
    params
}

/// Certificates for `x^m - 1` at `n = s^N`: `n^m - 1 = prod_{d | N} Phi_d(s^m)`.
pub fn construct_binomial_power(
    m: u64,
    s_values: &[BigInt],
    ratio: &BigRational,
    budget: &ConstructBudget,
) -> Result<Vec<WitnessCertificate>, ConstructError> {
    if m == 0 {
        return Err(ConstructError::InvalidInput("m must be positive".into()));
    }
    check_s(s_values)?;
    let sel = select_primes("binomial_power", 2, &BigRational::from_integer(m.into()), ratio)?;
    let mut coeffs = vec![BigInt::from(0); m as usize + 1];
    coeffs[0] = BigInt::from(-1);
    coeffs[m as usize] = BigInt::one();
    let poly = IntPoly::new(coeffs);
    let mut out = Vec::new();
    for s in s_values {
        let big_n = exponent("binomial_power", &sel, s, budget, &out)?;
        let n = num_traits::pow(s.clone(), big_n as usize);
        let x = num_traits::pow(s.clone(), m as usize);
        let factors: Vec<BigInt> = divisors_u64(big_n).into_iter().map(|d| cyclotomic_value(d, &x)).collect();
        assert_eq!(product(&factors), poly.evaluate(&n), "prod Phi_d(s^m) = n^m - 1");
        let Some((factors, mode)) = settle_mode(factors, &n) else {
            continue;
        };
        out.push(WitnessCertificate {
            class: ClassTag::BinomialPower,
            poly: poly.clone(),
            n,
            factors,
            params: base_params(&sel, big_n, s),
            mode,
        });
    }
    Ok(out)
}

/// Certificates for `Phi_m(x)` at `n = s^N` with every prime of `N` above `m`:
/// `Phi_m(s^N) = prod_{d | N} Phi_{md}(s)`.
pub fn construct_cyclotomic(
    m: u64,
    s_values: &[BigInt],
    ratio: &BigRational,
    budget: &ConstructBudget,
) -> Result<Vec<WitnessCertificate>, ConstructError> {
    if m == 0 {
        return Err(ConstructError::InvalidInput("m must be positive".into()));
    }
    check_s(s_values)?;
    let target = BigRational::from_integer(euler_phi(m).into());
    let sel = select_primes("cyclotomic", m + 1, &target, ratio)?;
    let poly = cyclotomic(m);
    let mut out = Vec::new();
    for s in s_values {
        let big_n = exponent("cyclotomic", &sel, s, budget, &out)?;
        let n = num_traits::pow(s.clone(), big_n as usize);
        let factors: Vec<BigInt> = divisors_u64(big_n)
            .into_iter()
            .map(|d| cyclotomic_value(m * d, s))
            .collect();
        assert_eq!(product(&factors), cyclotomic_value(m, &n), "prod Phi_md(s) = Phi_m(s^N)");
        let Some((factors, mode)) = settle_mode(factors, &n) else {
            continue;
        };
        let mut params = base_params(&sel, big_n, s);
        params.insert("m".to_string(), m.to_string());
        out.push(WitnessCertificate {
            class: ClassTag::Cyclotomic,
            poly: poly.clone(),
            n,
            factors,
            params,
            mode,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::Mode;

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn binomial_m2_s2() {
        let certs = construct_binomial_power(2, &ints(&[2]), &BigRational::one(), &ConstructBudget::default()).unwrap();
        assert_eq!(certs[0].n, BigInt::from(64));
        assert_eq!(certs[0].factors, ints(&[3, 5, 21, 13]));
        assert_eq!(certs[0].mode, Mode::Distinct);
        assert_eq!(certs[0].params["primes"], "2,3");
    }

    #[test]
    fn binomial_m1() {
        let certs = construct_binomial_power(1, &ints(&[5]), &BigRational::one(), &ConstructBudget::default()).unwrap();
        assert_eq!(certs[0].n, BigInt::from(25));
        assert_eq!(certs[0].factors, ints(&[4, 6]));
    }

    #[test]
    fn cyclotomic_m2_s2() {
        let certs = construct_cyclotomic(2, &ints(&[2]), &BigRational::one(), &ConstructBudget::default()).unwrap();
        assert_eq!(certs[0].n, BigInt::from(8));
        assert_eq!(certs[0].factors, ints(&[3, 3]));
        assert_eq!(certs[0].mode, Mode::Legendre);
    }

    #[test]
    fn oversized_exponent_is_a_budget_error() {
        let r = construct_binomial_power(3, &ints(&[2]), &BigRational::from_integer(4.into()), &ConstructBudget::default());
        assert!(matches!(r, Err(ConstructError::Budget(_))));
    }
}
