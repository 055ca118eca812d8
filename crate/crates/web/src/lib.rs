//! Browser bindings: polynomial tables, a smooth-value scan, and quadratic
//! certificates checked on the spot.
//!
//! The plain functions return `Result<String, DemoError>` so they run in native
//! tests; the `#[wasm_bindgen]` wrappers turn errors into JS exceptions.

use factoridiv::construct::{construct_quadratic, ConstructBudget, ConstructError};
use factoridiv::intpoly::IntPoly;
use factoridiv::numtheory::FactorBudget;
use factoridiv::scan::{scan, Theta};
use factoridiv::specialpoly::{chebyshev_t, cyclotomic, psi};
use factoridiv::verify::verify;
use serde_json::json;
use thiserror::Error;
use wasm_bindgen::prelude::*;

/// Largest table index, scan width, and certificate count served to a page.
pub const MAX_TABLE: u64 = 60;
pub const MAX_SCAN_WIDTH: u64 = 50_000;
pub const MAX_COUNT: usize = 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DemoError {
    #[error("unknown table {0:?}; expected phi, psi or chebyshev")]
    UnknownTable(String),
    #[error("{what} must be at most {max}")]
    TooLarge { what: &'static str, max: u64 },
    #[error("bad polynomial: {0}")]
    Poly(String),
    #[error("{0}")]
    Scan(String),
    #[error("{0}")]
    Construct(String),
}

/// One `name = polynomial` line per index, `phi` from 1, `psi` from 3,
/// `chebyshev` from 0.
pub fn table(kind: &str, max: u64) -> Result<String, DemoError> {
    if max > MAX_TABLE {
        return Err(DemoError::TooLarge { what: "max", max: MAX_TABLE });
    }
    let lines: Vec<String> = match kind {
        "phi" => (1..=max).map(|n| format!("Phi_{n} = {}", cyclotomic(n))).collect(),
        "psi" => (3..=max).map(|n| format!("psi_{n} = {}", psi(n).expect("n >= 3"))).collect(),
        "chebyshev" => (0..=max).map(|n| format!("T_{n} = {}", chebyshev_t(n))).collect(),
        other => return Err(DemoError::UnknownTable(other.to_string())),
    };
    Ok(lines.join("\n"))
}

fn parse_poly(poly: &str) -> Result<IntPoly, DemoError> {
    poly.parse().map_err(|e| DemoError::Poly(format!("{e}")))
}

/// JSON `{"hits": [...], "summary": {...}}` for `from <= n <= to`.
pub fn scan_json(poly: &str, from: u64, to: u64, theta: &str) -> Result<String, DemoError> {
    let f = parse_poly(poly)?;
    let theta: Theta = theta.parse().map_err(|e| DemoError::Scan(format!("{e}")))?;
    if to.saturating_sub(from) >= MAX_SCAN_WIDTH {
        return Err(DemoError::TooLarge { what: "to - from", max: MAX_SCAN_WIDTH - 1 });
    }
    let r = scan(&f, from, to, theta, &FactorBudget::default(), 1).map_err(|e| DemoError::Scan(e.to_string()))?;
    let s = &r.summary;
    Ok(json!({
        "hits": r.hits,
        "summary": {
            "scanned": s.scanned,
            "hits": s.hits,
            "min_exponent": s.min_exponent.map(|e| e.to_string()),
            "unresolved": s.unresolved,
        },
    })
    .to_string())
}

/// Quadratic certificates with their verification reports, as
/// `{"certificates": [...], "reports": [...], "note": ...}`.
pub fn quadratic_json(poly: &str, count: usize) -> Result<String, DemoError> {
    if count > MAX_COUNT {
        return Err(DemoError::TooLarge { what: "count", max: MAX_COUNT as u64 });
    }
    let f = parse_poly(poly)?;
    let (certs, note) = match construct_quadratic(&f, count, &ConstructBudget::default()) {
        Ok(c) => (c, None),
        Err(ConstructError::Budget(r)) => {
            let note = r.to_string();
            (r.partial, Some(note))
        }
        Err(e) => return Err(DemoError::Construct(e.to_string())),
    };
    let budget = FactorBudget::default();
    let reports: Vec<_> = certs.iter().map(|c| verify(c, &budget)).collect();
    Ok(json!({
        "certificates": certs.iter().map(|c| c.to_json_value()).collect::<Vec<_>>(),
        "reports": reports,
        "note": note,
    })
    .to_string())
}

fn js(e: DemoError) -> JsValue {
    JsValue::from_str(&e.to_string())
}

#[wasm_bindgen(js_name = polynomialTable)]
pub fn polynomial_table_js(kind: &str, max: u32) -> Result<String, JsValue> {
    table(kind, max.into()).map_err(js)
}

#[wasm_bindgen(js_name = scanRange)]
pub fn scan_range_js(poly: &str, from: u32, to: u32, theta: &str) -> Result<String, JsValue> {
    scan_json(poly, from.into(), to.into(), theta).map_err(js)
}

#[wasm_bindgen(js_name = quadraticCertificates)]
pub fn quadratic_certificates_js(poly: &str, count: u32) -> Result<String, JsValue> {
    quadratic_json(poly, count as usize).map_err(js)
}
