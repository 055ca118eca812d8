//! Quadratics: `P(P(x) + x) = P(x) Q(x)`, and a prime `q | Q(l)` splits
//! `P(n)` at `n = P(m) + m` into `q`, `Q(m)/q`, `P(m)`.

use indexmap::IndexMap;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{ClassTag, ConstructBudget, ConstructError, Mode, WitnessCertificate};
use crate::intpoly::IntPoly;
use crate::numtheory::find_prime_divisor_of_values;

/// Certificates for `count` values of `m = l (mod q)` satisfying
/// `1 < q < Q(m)/q < P(m) < n`.
pub fn construct_quadratic(
    p: &IntPoly,
    count: usize,
    budget: &ConstructBudget,
) -> Result<Vec<WitnessCertificate>, ConstructError> {
    if p.deg() != Some(2) || !p.leading().is_some_and(|c| c.is_positive()) || p.coeffs().iter().any(|c| c.is_negative()) {
        return Err(ConstructError::InvalidInput(format!(
            "quadratic class needs degree 2 with nonnegative coefficients, got {p}"
        )));
    }
    let inner = &IntPoly::x() + p;
    let q_poly = p.compose(&inner).div_exact_or_panic(p);
    let lead_p = p.leading().expect("nonzero").clone();
    let lead_q = q_poly.leading().expect("nonzero").clone();
    // q > lead(Q) / lead(P) makes Q(x)/q lead with less than P does.
    let lower_bound = &lead_q / &lead_p;
    let (l, q) = find_prime_divisor_of_values(&q_poly, &lower_bound, &budget.schur)?;

    let mut out = Vec::new();
    let mut m = l.clone();
    if m.is_zero() {
        m = q.clone();
    }
    for _ in 0..budget.max_candidates {
        if out.len() >= count {
            return Ok(out);
        }
        let pm = p.evaluate(&m);
        let qm = q_poly.evaluate(&m);
        let n = &pm + &m;
        debug_assert!((&qm % &q).is_zero());
        let cofactor = &qm / &q;
        let chain = BigInt::one() < q && q < cofactor && cofactor < pm && pm < n;
        if chain {
            let factors = vec![q.clone(), cofactor, pm];
            debug_assert_eq!(super::product(&factors), p.evaluate(&n));
            let mut params = IndexMap::new();
            params.insert("q".to_string(), q.to_string());
            params.insert("l".to_string(), l.to_string());
            params.insert("m".to_string(), m.to_string());
            out.push(WitnessCertificate {
                class: ClassTag::Quadratic,
                poly: p.clone(),
                n,
                factors,
                params,
                mode: Mode::Distinct,
            });
        }
        m += &q;
    }
    if out.len() >= count {
        return Ok(out);
    }
    Err(ConstructError::budget(
        "quadratic",
        format!("only {} of {count} certificates within {} candidates", out.len(), budget.max_candidates),
        out,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_quadratic_first_witness() {
        let p = IntPoly::from_i64(&[1, 0, 1]);
        let certs = construct_quadratic(&p, 5, &ConstructBudget::default()).unwrap();
        assert_eq!(certs.len(), 5);
        assert_eq!(certs[0].n, BigInt::from(21));
        let f: Vec<BigInt> = [2, 13, 17].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(certs[0].factors, f);
        assert_eq!(
            certs[0].to_json(),
            r#"{"v":1,"class":"quadratic","poly":["1","0","1"],"n":"21","factors":["2","13","17"],"params":{"q":"2","l":"0","m":"4"},"mode":"distinct"}"#
        );
    }

    #[test]
    fn rejects_wrong_degree() {
        let p = IntPoly::from_i64(&[1, 1, 0, 1]);
        assert!(matches!(
            construct_quadratic(&p, 1, &ConstructBudget::default()),
            Err(ConstructError::InvalidInput(_))
        ));
    }
}
