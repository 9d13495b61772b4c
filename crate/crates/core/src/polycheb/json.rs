use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{Monomial, SparsePolynomial};
use crate::exactfield::json::{format_rational, ElementJson, RationalRepr};
use crate::exactfield::{Field, NumberFieldElement, Rational};
use crate::{Error, Result};

/// Coefficients that know their wire form.
pub trait CoeffJson: Field {
    fn to_json(&self) -> Value;
    /// Parses a coefficient into the field of `template`.
    fn from_json(v: &Value, template: &Self) -> Result<Self>;
}

impl CoeffJson for Rational {
    fn to_json(&self) -> Value {
        Value::String(format_rational(self))
    }
    fn from_json(v: &Value, _template: &Self) -> Result<Self> {
        RationalRepr::deserialize(v)?.into_rational()
    }
}

impl CoeffJson for NumberFieldElement {
    fn to_json(&self) -> Value {
        serde_json::to_value(ElementJson::from_element(self)).expect("element serializes")
    }
    /// Plain rationals are embedded, arrays are power-basis coefficients and
    /// full elements must match the field.
    fn from_json(v: &Value, template: &Self) -> Result<Self> {
        if v.is_object() {
            ElementJson::deserialize(v)?.to_element_in(template.minpoly())
        } else if let Value::Array(items) = v {
            let m = template.minpoly();
            if items.len() > m.degree() {
                return Err(Error::Parse(format!("{} coefficients for a degree {} field", items.len(), m.degree())));
            }
            let coeffs = items
                .iter()
                .map(|x| RationalRepr::deserialize(x)?.into_rational())
                .collect::<Result<Vec<_>>>()?;
            Ok(NumberFieldElement::new(m.clone(), coeffs))
        } else {
            let q = RationalRepr::deserialize(v)?.into_rational()?;
            Ok(NumberFieldElement::from_rational(template.minpoly(), q))
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub coeff: Value,
}

/// `{"nvars": v, "terms": [{"exp": [...], "coeff": ...}]}`, terms in
/// descending graded-lex order.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub nvars: usize,
    pub terms: Vec<TermJson>,
}

impl PolynomialJson {
    pub fn from_poly<F: CoeffJson>(p: &SparsePolynomial<F>) -> Self {
        PolynomialJson {
            nvars: p.nvars(),
            terms: p
                .terms()
                .map(|(m, c)| TermJson { exp: m.exponents().to_vec(), coeff: c.to_json() })
                .collect(),
        }
    }

    pub fn to_poly<F: CoeffJson>(&self, template: &F) -> Result<SparsePolynomial<F>> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            if t.exp.len() != self.nvars {
                return Err(Error::Parse(format!("exponent {:?} does not have {} entries", t.exp, self.nvars)));
            }
            terms.push((Monomial::new(t.exp.clone()), F::from_json(&t.coeff, template)?));
        }
        Ok(SparsePolynomial::from_terms(self.nvars, terms))
    }
}
