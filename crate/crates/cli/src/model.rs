//! `model.json`: barycentric rationals and Arnoldi polynomials.
//!
//! ```text
//! {"type":"barycentric","supports":[[re,im],...],"values":[...],"weights":[...]}
//! {"type":"arnoldi","degree":n,"hessenberg":[[re,im],...],"coeffs":[[re,im],...]}
//! ```
//!
//! The Hessenberg matrix is `(n+1) x n`, row-major.

use std::path::Path;

use serde::{Deserialize, Serialize};

use ratapprox::{ArnoldiPolynomial, Barycentric, C64};

use crate::num::{pairs, to_json, Num};
use crate::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq)]
pub enum Model {
    Rational(Barycentric),
    Polynomial(ArnoldiPolynomial),
}

#[derive(Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum Out {
    Barycentric { supports: Vec<[Num; 2]>, values: Vec<[Num; 2]>, weights: Vec<[Num; 2]> },
    Arnoldi { degree: usize, hessenberg: Vec<[Num; 2]>, coeffs: Vec<[Num; 2]> },
}

type Pairs = Vec<[Option<f64>; 2]>;

#[derive(Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum In {
    Barycentric { supports: Pairs, values: Pairs, weights: Pairs },
    Arnoldi { degree: usize, hessenberg: Pairs, coeffs: Pairs },
}

fn complex(field: &str, p: Pairs) -> CliResult<Vec<C64>> {
    p.into_iter()
        .map(|[re, im]| match (re, im) {
            (Some(re), Some(im)) => Ok(C64::new(re, im)),
            _ => Err(CliError::Usage(format!("model field `{field}` holds a non-finite entry"))),
        })
        .collect()
}

impl Model {
    pub fn degree(&self) -> usize {
        match self {
            Self::Rational(r) => r.degree(),
            Self::Polynomial(p) => p.degree(),
        }
    }

    pub fn eval(&self, z: C64) -> C64 {
        match self {
            Self::Rational(r) => r.eval(z),
            Self::Polynomial(p) => p.eval(&[z])[0],
        }
    }

    pub fn to_json(&self) -> String {
        let out = match self {
            Self::Rational(r) => Out::Barycentric {
                supports: pairs(r.supports()),
                values: pairs(r.values()),
                weights: pairs(r.weights()),
            },
            Self::Polynomial(p) => {
                Out::Arnoldi { degree: p.degree(), hessenberg: pairs(p.hessenberg()), coeffs: pairs(p.coeffs()) }
            }
        };
        to_json(&out)
    }

    /// The file carries no sample count, so a loaded polynomial reports
    /// `fit_points() == 0`.
    pub fn from_json(text: &str) -> CliResult<Self> {
        let parsed: In = serde_json::from_str(text).map_err(|e| CliError::Usage(format!("invalid model file: {e}")))?;
        let bad = |e: ratapprox::Error| CliError::Usage(format!("invalid model: {e}"));
        Ok(match parsed {
            In::Barycentric { supports, values, weights } => Self::Rational(
                Barycentric::new(
                    complex("supports", supports)?,
                    complex("values", values)?,
                    complex("weights", weights)?,
                )
                .map_err(bad)?,
            ),
            In::Arnoldi { degree, hessenberg, coeffs } => Self::Polynomial(
                ArnoldiPolynomial::from_parts(
                    degree,
                    complex("hessenberg", hessenberg)?,
                    complex("coeffs", coeffs)?,
                    0,
                )
                .map_err(bad)?,
            ),
        })
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::from_json(&text)
    }
}
