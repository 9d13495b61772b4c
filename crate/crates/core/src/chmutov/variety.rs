use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::exactfield::{MinimalPolynomial, NumberFieldElement};
use crate::polycheb::{chebyshev, CosineField, Sign, SparsePolynomial};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VarietyKind {
    #[serde(rename = "hypersurface-P4")]
    HypersurfaceP4,
    #[serde(rename = "double-solid-P3")]
    DoubleSolidP3,
}

impl VarietyKind {
    /// Affine variables of the defining equation.
    pub fn affine_vars(self) -> usize {
        match self {
            VarietyKind::HypersurfaceP4 => 4,
            VarietyKind::DoubleSolidP3 => 3,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            VarietyKind::HypersurfaceP4 => "hypersurface-P4",
            VarietyKind::DoubleSolidP3 => "double-solid-P3",
        }
    }
}

impl FromStr for VarietyKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hypersurface-P4" | "hypersurface" | "hyp" => Ok(VarietyKind::HypersurfaceP4),
            "double-solid-P3" | "double-solid" | "ds" => Ok(VarietyKind::DoubleSolidP3),
            other => Err(Error::Parse(format!("unknown variety kind `{other}`"))),
        }
    }
}

impl fmt::Display for VarietyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Signs `β_j` in `Σ β_j T_n(x_j) (+ β_0)`; the constant is present for
/// double solids only.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignPattern {
    pub beta: Vec<Sign>,
    pub constant: Option<Sign>,
}

impl SignPattern {
    pub fn hypersurface(beta: [Sign; 4]) -> Self {
        SignPattern { beta: beta.to_vec(), constant: None }
    }

    pub fn double_solid(beta: [Sign; 3], constant: Sign) -> Self {
        SignPattern { beta: beta.to_vec(), constant: Some(constant) }
    }

    /// `"++--"` for hypersurfaces, `"++-;+1"` (or `"++-;-1"`) for double solids.
    pub fn parse(s: &str) -> Result<Self> {
        match s.split_once(';') {
            Some((b, c)) => Ok(SignPattern { beta: Sign::parse_all(b.trim())?, constant: Some(c.parse()?) }),
            None => Ok(SignPattern { beta: Sign::parse_all(s.trim())?, constant: None }),
        }
    }

    pub fn flipped(&self) -> Self {
        SignPattern { beta: self.beta.iter().map(|s| s.flip()).collect(), constant: self.constant.map(Sign::flip) }
    }
}

impl fmt::Display for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.beta {
            write!(f, "{s}")?;
        }
        if let Some(c) = self.constant {
            write!(f, ";{c}1")?;
        }
        Ok(())
    }
}

/// Where the stored equation and node coordinates live.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Chart {
    /// Affine equation in `m` variables, embedded as `(1 : x_1 : ... : x_m)`.
    Affine,
    /// Homogeneous equation and homogeneous node coordinates.
    Projective,
}

#[derive(Clone, Debug)]
pub struct NodalVariety {
    pub name: String,
    pub kind: VarietyKind,
    pub degree: u32,
    pub field: Arc<MinimalPolynomial>,
    pub defining: SparsePolynomial<NumberFieldElement>,
    pub chart: Chart,
    /// Present for Chmutov varieties.
    pub signs: Option<SignPattern>,
    pub(crate) cosines: Option<CosineField>,
}

impl NodalVariety {
    /// A variety given by an explicit equation; checks arity, degree and
    /// homogeneity against the kind and chart.
    pub fn new(
        name: impl Into<String>,
        kind: VarietyKind,
        degree: u32,
        field: Arc<MinimalPolynomial>,
        defining: SparsePolynomial<NumberFieldElement>,
        chart: Chart,
    ) -> Result<Self> {
        let name = name.into();
        let m = kind.affine_vars();
        let want_vars = match chart {
            Chart::Affine => m,
            Chart::Projective => m + 1,
        };
        if defining.nvars() != want_vars {
            return Err(Error::Invalid(format!(
                "{name}: {} chart needs {want_vars} variables, equation has {}",
                match chart {
                    Chart::Affine => "affine",
                    Chart::Projective => "projective",
                },
                defining.nvars()
            )));
        }
        if defining.degree() != Some(degree) {
            return Err(Error::Invalid(format!("{name}: equation degree {:?} but declared {degree}", defining.degree())));
        }
        if chart == Chart::Projective && !defining.is_homogeneous() {
            return Err(Error::Invalid(format!("{name}: projective equation is not homogeneous")));
        }
        if kind == VarietyKind::DoubleSolidP3 && degree % 2 == 1 {
            return Err(Error::Invalid(format!("{name}: double solids need an even branch degree, got {degree}")));
        }
        if let Some(c) = defining.some_coeff() {
            if c.minpoly().as_ref() != field.as_ref() {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(NodalVariety { name, kind, degree, field, defining, chart, signs: None, cosines: None })
    }

    pub fn is_chmutov(&self) -> bool {
        self.signs.is_some()
    }

    pub fn cosine_field(&self) -> Option<&CosineField> {
        self.cosines.as_ref()
    }

    /// The equation in homogeneous coordinates `x_0, ..., x_m`.
    pub fn homogeneous_equation(&self) -> Result<SparsePolynomial<NumberFieldElement>> {
        match self.chart {
            Chart::Affine => self.defining.homogenize(self.degree),
            Chart::Projective => Ok(self.defining.clone()),
        }
    }
}

/// `Σ β_j T_n(x_j) (+ β_0)` over the catalog field for `cos(π/n)`.
pub fn chmutov_variety(kind: VarietyKind, n: u32, signs: &SignPattern) -> Result<NodalVariety> {
    if kind == VarietyKind::DoubleSolidP3 && n % 2 == 1 {
        return Err(Error::Invalid(format!("double solids need an even branch degree, got {n}")));
    }
    chmutov_variety_in(kind, CosineField::for_degree(n)?, signs)
}

/// Same with a caller-supplied cosine field, for degrees outside the catalog.
pub fn chmutov_variety_in(kind: VarietyKind, field: CosineField, signs: &SignPattern) -> Result<NodalVariety> {
    let n = field.n();
    let m = kind.affine_vars();
    if signs.beta.len() != m {
        return Err(Error::Invalid(format!("{kind} needs {m} signs, got {}", signs.beta.len())));
    }
    match (kind, signs.constant) {
        (VarietyKind::HypersurfaceP4, Some(_)) => {
            return Err(Error::Invalid("hypersurfaces take no constant sign".into()))
        }
        (VarietyKind::DoubleSolidP3, None) => return Err(Error::Invalid("double solids need a constant sign".into())),
        _ => {}
    }
    if kind == VarietyKind::DoubleSolidP3 && n % 2 == 1 {
        return Err(Error::Invalid(format!("double solids need an even branch degree, got {n}")));
    }
    let tn = field.embed(&chebyshev(n));
    let mut f = SparsePolynomial::zero(m);
    for (j, s) in signs.beta.iter().enumerate() {
        let term = tn.embed(m, &[j]).scale(&NumberFieldElement::from_int(field.minpoly(), s.value()));
        f = f.add(&term);
    }
    if let Some(c) = signs.constant {
        f = f.add(&SparsePolynomial::constant(m, NumberFieldElement::from_int(field.minpoly(), c.value())));
    }
    let tag = match kind {
        VarietyKind::HypersurfaceP4 => "hypersurface",
        VarietyKind::DoubleSolidP3 => "double-solid",
    };
    let mut v = NodalVariety::new(format!("chmutov-{tag}-n{n}-{signs}"), kind, n, field.minpoly().clone(), f, Chart::Affine)?;
    v.signs = Some(signs.clone());
    v.cosines = Some(field);
    Ok(v)
}
