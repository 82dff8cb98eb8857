//! JSON encodings. Rationals are strings `"p/q"` (just `"p"` when `q = 1`);
//! truncated polynomials are `{"cap": n, "coeffs": [...]}`.

use std::str::FromStr;

use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::{BetaPoly, TruncPoly};
use crate::{Integer, Rational};

pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

/// Parses `"p/q"` or `"p"`, normalizing the result.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num = Integer::from_str(num.trim()).map_err(|e| Error::Json(format!("{s:?}: {e}")))?;
    let den = Integer::from_str(den.trim()).map_err(|e| Error::Json(format!("{s:?}: {e}")))?;
    if den.is_zero() {
        return Err(Error::Json(format!("{s:?}: zero denominator")));
    }
    Ok(Rational::new(num, den))
}

/// Scalars with a JSON representation.
pub trait JsonScalar: Sized {
    fn to_json(&self) -> Value;

    fn from_json(v: &Value) -> Result<Self>;
}

impl JsonScalar for Rational {
    fn to_json(&self) -> Value {
        Value::String(format_rational(self))
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => parse_rational(s),
            other => Err(Error::Json(format!(
                "expected rational string, got {other}"
            ))),
        }
    }
}

/// A β-polynomial is an object from exponent to coefficient, e.g.
/// `{"0": "1/2", "1": "-1/4"}`.
impl JsonScalar for BetaPoly {
    fn to_json(&self) -> Value {
        let map: Map<String, Value> = self
            .terms()
            .map(|(k, c)| (k.to_string(), c.to_json()))
            .collect();
        Value::Object(map)
    }

    fn from_json(v: &Value) -> Result<Self> {
        let Value::Object(map) = v else {
            return Err(Error::Json(format!(
                "expected β-polynomial object, got {v}"
            )));
        };
        let mut terms = Vec::with_capacity(map.len());
        for (k, c) in map {
            let k: u32 = k
                .parse()
                .map_err(|_| Error::Json(format!("bad β exponent {k:?}")))?;
            terms.push((k, Rational::from_json(c)?));
        }
        Ok(BetaPoly::from_terms(terms))
    }
}

#[derive(Serialize, Deserialize)]
struct RawPoly {
    cap: usize,
    coeffs: Vec<Value>,
}

impl<C: Scalar + JsonScalar> Serialize for TruncPoly<C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        RawPoly {
            cap: self.cap(),
            coeffs: self.coeffs().iter().map(JsonScalar::to_json).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de, C: Scalar + JsonScalar> Deserialize<'de> for TruncPoly<C> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = RawPoly::deserialize(deserializer)?;
        if raw.coeffs.len() != raw.cap + 1 {
            return Err(D::Error::custom(format!(
                "cap {} needs {} coefficients, got {}",
                raw.cap,
                raw.cap + 1,
                raw.coeffs.len()
            )));
        }
        let coeffs = raw
            .coeffs
            .iter()
            .map(C::from_json)
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Ok(TruncPoly::from_coeffs(raw.cap, coeffs))
    }
}

/// `#[serde(with = "prym_core::json::rational")]`
pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}

/// `#[serde(with = "prym_core::json::option_rational")]`
pub mod option_rational {
    use super::*;

    pub fn serialize<S: Serializer>(
        q: &Option<Rational>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        match q {
            Some(q) => s.serialize_some(&format_rational(q)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Option<Rational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| parse_rational(&s).map_err(D::Error::custom))
            .transpose()
    }
}
