//! Text encodings of field elements.
//!
//! Rationals are strings `"p/q"` (integers may also be written `"p"` or as a
//! bare JSON integer). Elements of `Q(sqrt2)` are `[a, b]` and elements of
//! `Q(cbrt2)` are `[a, b, c]`, each coefficient a rational in the above form.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use super::field::NumberField;
use super::scalar::Rational;
use super::{CubicElement, ExactError, QuadElement};

pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    let bad = || ExactError::Parse(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(
            BigInt::from_str(s).map_err(|_| bad())?,
        )),
    }
}

/// One rational coefficient as it may appear in an input file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalRepr {
    Int(i64),
    Text(String),
}

impl RationalRepr {
    pub fn to_rational(&self) -> Result<Rational, ExactError> {
        match self {
            RationalRepr::Int(v) => Ok(Rational::from_integer(BigInt::from(*v))),
            RationalRepr::Text(s) => parse_rational(s),
        }
    }

    pub fn from_rational(q: &Rational) -> Self {
        RationalRepr::Text(format_rational(q))
    }
}

/// A coefficient tuple: a single rational or a list of power-basis
/// coefficients.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffRepr {
    Scalar(RationalRepr),
    Tuple(Vec<RationalRepr>),
}

impl CoeffRepr {
    pub fn to_element<K: NumberField>(&self) -> Result<K, ExactError> {
        let coeffs = match self {
            CoeffRepr::Scalar(r) => vec![r.to_rational()?],
            CoeffRepr::Tuple(v) => v.iter().map(RationalRepr::to_rational).collect::<Result<_, _>>()?,
        };
        K::from_coefficients(&coeffs)
    }

    pub fn from_element<K: NumberField>(x: &K) -> Self {
        let c = x.coefficients();
        if c.len() == 1 {
            CoeffRepr::Scalar(RationalRepr::from_rational(&c[0]))
        } else {
            CoeffRepr::Tuple(c.iter().map(RationalRepr::from_rational).collect())
        }
    }
}

fn serialize_coeffs<S: Serializer>(coeffs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(coeffs.len()))?;
    for c in coeffs {
        seq.serialize_element(&format_rational(c))?;
    }
    seq.end()
}

fn deserialize_coeffs<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
    let raw = Vec::<RationalRepr>::deserialize(d)?;
    raw.iter()
        .map(|r| r.to_rational().map_err(de::Error::custom))
        .collect()
}

impl Serialize for QuadElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize_coeffs(&self.coefficients(), s)
    }
}

impl<'de> Deserialize<'de> for QuadElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let c = deserialize_coeffs(d)?;
        QuadElement::from_coefficients(&c).map_err(de::Error::custom)
    }
}

impl Serialize for CubicElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize_coeffs(&self.coefficients(), s)
    }
}

impl<'de> Deserialize<'de> for CubicElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let c = deserialize_coeffs(d)?;
        CubicElement::from_coefficients(&c).map_err(de::Error::custom)
    }
}

/// serde adapter for a single rational written as `"p/q"`.
pub mod rational_text {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        RationalRepr::deserialize(d)?
            .to_rational()
            .map_err(de::Error::custom)
    }
}
