//! Products of Chebyshev polynomials at `n = T_N(s)`:
//! `T_m(n) = T_{mN}(s) = (1/2) prod_{d | mN, mN/d odd} psi_{4d}(2s)`.

use indexmap::IndexMap;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::{merge_duplicates, product, select_primes, settle_mode, ClassTag, ConstructBudget, ConstructError, WitnessCertificate};
use crate::intpoly::IntPoly;
use crate::numtheory::next_prime;
use crate::specialpoly::{chebyshev_factor_values, chebyshev_t, chebyshev_value, euler_phi};

/// Halves the smallest even value; `None` if all are odd.
fn halve_one(values: &mut [BigInt]) -> Option<()> {
    let two = BigInt::from(2);
    let idx = (0..values.len())
        .filter(|&i| (&values[i] % &two).is_zero())
        .min_by(|&a, &b| values[a].cmp(&values[b]))?;
    values[idx] = &values[idx] / &two;
    Some(())
}

/// Certificates for `prod_i T_{m_i}` with `n = T_N(s)`, `N` the product of the
/// least primes above `max m_i` whose Mertens product exceeds
/// `2 phi(max m_i) ratio`.
pub fn construct_chebyshev(
    ms: &[u64],
    s_values: &[BigInt],
    ratio: &BigRational,
    budget: &ConstructBudget,
) -> Result<Vec<WitnessCertificate>, ConstructError> {
    let Some(&big_l) = ms.iter().max() else {
        return Err(ConstructError::InvalidInput("at least one index m is needed".into()));
    };
    if ms.contains(&0) {
        return Err(ConstructError::InvalidInput("indices m must be positive".into()));
    }
    if let Some(s) = s_values.iter().find(|s| *s < &BigInt::from(2)) {
        return Err(ConstructError::InvalidInput(format!("s must be at least 2, got {s}")));
    }
    let target = BigRational::from_integer((2 * euler_phi(big_l)).into());
    let sel = select_primes("chebyshev", next_prime(big_l), &target, ratio)?;
    let primes = sel.primes.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
    let poly = ms.iter().fold(IntPoly::one(), |acc, &m| &acc * &chebyshev_t(m));
    let class = if ms.len() == 1 { ClassTag::Chebyshev } else { ClassTag::ChebyshevProduct };

    let mut out = Vec::new();
    for s in s_values {
        let too_big = |out: &[WitnessCertificate]| {
            ConstructError::budget(
                "chebyshev",
                format!("primes {primes} give T_N(s) with more than {} digits", budget.max_n_digits),
                out.to_vec(),
            )
        };
        let Some(big_n) = sel.primorial().to_u64() else {
            return Err(too_big(&out));
        };
        let digits_per_step = ((s.bits() + 1) as f64) * std::f64::consts::LOG10_2;
        if big_n as f64 * big_l as f64 * digits_per_step > budget.max_n_digits as f64 {
            return Err(too_big(&out));
        }
        let n = chebyshev_value(big_n, s);
        let mut factors = Vec::new();
        for &m in ms {
            let mut raw: Vec<BigInt> = chebyshev_factor_values(m * big_n, s).into_iter().map(|(_, v)| v).collect();
            let t_mn = chebyshev_value(m * big_n, s);
            assert_eq!(product(&raw), &t_mn * 2u32, "prod psi_4d(2s) = 2 T_mN(s)");
            assert_eq!(chebyshev_value(m, &n), t_mn, "T_m(T_N(s)) = T_mN(s)");
            if halve_one(&mut raw).is_none() {
                // no even value: fold everything into one factor and halve it
                let merged = product(&merge_duplicates(&raw)) / 2u32;
                raw = vec![merged];
            }
            factors.extend(raw);
        }
        assert_eq!(product(&factors), poly.evaluate(&n), "factor product must equal P(n)");
        let Some((factors, mode)) = settle_mode(factors, &n) else {
            continue;
        };
        let mut params = IndexMap::new();
        params.insert("s".to_string(), s.to_string());
        params.insert("ms".to_string(), ms.iter().map(u64::to_string).collect::<Vec<_>>().join(","));
        params.insert("primes".to_string(), primes.clone());
        params.insert("N".to_string(), big_n.to_string());
        out.push(WitnessCertificate {
            class,
            poly: poly.clone(),
            n,
            factors,
            params,
            mode,
        });
    }
    Ok(out)
}
