use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{MinimalPolynomial, NumberFieldElement, Rational};
use crate::{Error, Result};

/// `"p/q"`, or `"p"` for integers.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(Error::DivisionByZero);
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Serde helper for fields holding a single rational as a string.
pub mod rational_str {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let raw = RationalRepr::deserialize(d)?;
        raw.into_rational().map_err(serde::de::Error::custom)
    }
}

/// Accepts both `"3/4"` and bare JSON integers on input.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum RationalRepr {
    Int(i64),
    Str(String),
}

impl RationalRepr {
    pub fn into_rational(self) -> Result<Rational> {
        match self {
            RationalRepr::Int(n) => Ok(Rational::from_integer(n.into())),
            RationalRepr::Str(s) => parse_rational(&s),
        }
    }
}

impl From<&Rational> for RationalRepr {
    fn from(q: &Rational) -> Self {
        RationalRepr::Str(format_rational(q))
    }
}

/// Wire form of a number-field element.
#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct ElementJson {
    pub minpoly: Vec<i64>,
    pub coeffs: Vec<RationalRepr>,
}

impl ElementJson {
    pub fn from_element(x: &NumberFieldElement) -> Self {
        ElementJson {
            minpoly: x.minpoly().coeffs().iter().map(|c| i64::try_from(c).expect("minimal polynomial fits i64")).collect(),
            coeffs: x.coeffs().iter().map(RationalRepr::from).collect(),
        }
    }

    pub fn to_element(&self) -> Result<NumberFieldElement> {
        let m = Arc::new(MinimalPolynomial::from_i64(&self.minpoly)?);
        let coeffs = self.coeffs.iter().cloned().map(RationalRepr::into_rational).collect::<Result<Vec<_>>>()?;
        if coeffs.len() > m.degree() {
            return Err(Error::Parse(format!("{} coefficients for a degree {} field", coeffs.len(), m.degree())));
        }
        Ok(NumberFieldElement::new(m, coeffs))
    }

    /// Same as `to_element` but shares an existing field handle.
    pub fn to_element_in(&self, m: &Arc<MinimalPolynomial>) -> Result<NumberFieldElement> {
        let x = self.to_element()?;
        if x.minpoly().as_ref() != m.as_ref() {
            return Err(Error::FieldMismatch);
        }
        Ok(NumberFieldElement::new(m.clone(), x.coeffs().to_vec()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_round_trip() {
        for s in ["0", "-3", "1/2", "-7/12"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(format_rational(&parse_rational("4/8").unwrap()), "1/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn element_round_trip() {
        let j = r#"{"minpoly":[-5,0,1],"coeffs":["1/4","1/4"]}"#;
        let e: ElementJson = serde_json::from_str(j).unwrap();
        let x = e.to_element().unwrap();
        let back = serde_json::to_string(&ElementJson::from_element(&x)).unwrap();
        assert_eq!(back, j);
    }
}
