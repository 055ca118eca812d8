//! The portable proof object and its JSON form.

use std::fmt;
use std::str::FromStr;

use indexmap::IndexMap;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::intpoly::IntPoly;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassTag {
    Quadratic,
    Cubic,
    QuarticCubicLinear,
    QuarticBiquadratic,
    BinomialPower,
    Cyclotomic,
    Chebyshev,
    ChebyshevProduct,
}

impl ClassTag {
    pub const ALL: [ClassTag; 8] = [
        ClassTag::Quadratic,
        ClassTag::Cubic,
        ClassTag::QuarticCubicLinear,
        ClassTag::QuarticBiquadratic,
        ClassTag::BinomialPower,
        ClassTag::Cyclotomic,
        ClassTag::Chebyshev,
        ClassTag::ChebyshevProduct,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClassTag::Quadratic => "quadratic",
            ClassTag::Cubic => "cubic",
            ClassTag::QuarticCubicLinear => "quartic_cubic_linear",
            ClassTag::QuarticBiquadratic => "quartic_biquadratic",
            ClassTag::BinomialPower => "binomial_power",
            ClassTag::Cyclotomic => "cyclotomic",
            ClassTag::Chebyshev => "chebyshev",
            ClassTag::ChebyshevProduct => "chebyshev_product",
        }
    }
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClassTag {
    type Err = CertificateFormatError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ClassTag::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| CertificateFormatError::UnknownClass(s.to_string()))
    }
}

/// Which verification rule the constructor expects to succeed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Distinct,
    Legendre,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Distinct => "distinct",
            Mode::Legendre => "legendre",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = CertificateFormatError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "distinct" => Ok(Mode::Distinct),
            "legendre" => Ok(Mode::Legendre),
            _ => Err(CertificateFormatError::UnknownMode(s.to_string())),
        }
    }
}

/// `poly(n)` together with a factor list whose product is `|poly(n)|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessCertificate {
    pub class: ClassTag,
    pub poly: IntPoly,
    pub n: BigInt,
    pub factors: Vec<BigInt>,
    pub params: IndexMap<String, String>,
    pub mode: Mode,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertificateFormatError {
    #[error("malformed certificate JSON: {0}")]
    Json(String),
    #[error("unsupported certificate version {0}")]
    Version(u64),
    #[error("unknown class {0:?}")]
    UnknownClass(String),
    #[error("unknown mode {0:?}")]
    UnknownMode(String),
    #[error("field {field}: {value:?} is not a decimal integer")]
    BadInteger { field: &'static str, value: String },
}

#[derive(Serialize, Deserialize)]
struct CertificateJson {
    v: u64,
    class: String,
    poly: Vec<String>,
    n: String,
    factors: Vec<String>,
    #[serde(default)]
    params: IndexMap<String, String>,
    mode: String,
}

fn parse_int(field: &'static str, s: &str) -> Result<BigInt, CertificateFormatError> {
    s.parse().map_err(|_| CertificateFormatError::BadInteger {
        field,
        value: s.to_string(),
    })
}

impl WitnessCertificate {
    /// Value `poly(n)`.
    pub fn value(&self) -> BigInt {
        self.poly.evaluate(&self.n)
    }

    fn to_json_struct(&self) -> CertificateJson {
        CertificateJson {
            v: SCHEMA_VERSION as u64,
            class: self.class.as_str().to_string(),
            poly: self.poly.coeffs().iter().map(|c| c.to_string()).collect(),
            n: self.n.to_string(),
            factors: self.factors.iter().map(|f| f.to_string()).collect(),
            params: self.params.clone(),
            mode: self.mode.as_str().to_string(),
        }
    }

    fn from_json_struct(j: CertificateJson) -> Result<Self, CertificateFormatError> {
        if j.v != SCHEMA_VERSION as u64 {
            return Err(CertificateFormatError::Version(j.v));
        }
        let coeffs = j
            .poly
            .iter()
            .map(|c| parse_int("poly", c))
            .collect::<Result<Vec<_>, _>>()?;
        let factors = j
            .factors
            .iter()
            .map(|c| parse_int("factors", c))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(WitnessCertificate {
            class: j.class.parse()?,
            poly: IntPoly::new(coeffs),
            n: parse_int("n", &j.n)?,
            factors,
            params: j.params,
            mode: j.mode.parse()?,
        })
    }

    /// Compact single-object JSON, keys in schema order.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_struct()).expect("certificate serializes")
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.to_json_struct()).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, CertificateFormatError> {
        let j: CertificateJson =
            serde_json::from_str(s).map_err(|e| CertificateFormatError::Json(e.to_string()))?;
        Self::from_json_struct(j)
    }

    pub fn from_json_value(v: serde_json::Value) -> Result<Self, CertificateFormatError> {
        let j: CertificateJson =
            serde_json::from_value(v).map_err(|e| CertificateFormatError::Json(e.to_string()))?;
        Self::from_json_struct(j)
    }
}

/// A JSON array of certificates, pretty-printed one per line.
pub fn certificates_to_json(certs: &[WitnessCertificate]) -> String {
    if certs.is_empty() {
        return "[]\n".to_string();
    }
    let body: Vec<String> = certs.iter().map(|c| format!("  {}", c.to_json())).collect();
    format!("[\n{}\n]\n", body.join(",\n"))
}

/// Parses a JSON array of certificates (a single object is also accepted).
pub fn certificates_from_json(s: &str) -> Result<Vec<WitnessCertificate>, CertificateFormatError> {
    let v: serde_json::Value =
        serde_json::from_str(s).map_err(|e| CertificateFormatError::Json(e.to_string()))?;
    match v {
        serde_json::Value::Array(items) => items
            .into_iter()
            .map(WitnessCertificate::from_json_value)
            .collect(),
        obj @ serde_json::Value::Object(_) => Ok(vec![WitnessCertificate::from_json_value(obj)?]),
        _ => Err(CertificateFormatError::Json("expected an array or object".into())),
    }
}
