//! JSON input documents.

use std::path::Path;

use cyclic_leibniz::{Algebra, Form, Scalar, Tol};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// `{"dimension": n, "tail": [[re, im], ...], "tolerance": eps}`; the tail
/// lists `α₂, …, αₙ` and `tolerance` is optional.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub dimension: usize,
    pub tail: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

impl AlgebraDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed document: {e}")))
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }

    /// The document's own tolerance, else `fallback`.
    pub fn tolerance(&self, fallback: Tol) -> Result<Tol, CliError> {
        match self.tolerance {
            None => Ok(fallback),
            Some(eps) => Tol::new(eps).map_err(|e| CliError::Input(e.to_string())),
        }
    }

    pub fn to_algebra(&self, fallback: Tol) -> Result<Algebra, CliError> {
        let tol = self.tolerance(fallback)?;
        let tail = self
            .tail
            .iter()
            .map(|&[re, im]| Scalar::new(re, im))
            .collect();
        Algebra::build(self.dimension, tail, tol).map_err(|e| CliError::Input(e.to_string()))
    }

    /// Representative algebra of a canonical form: 1 at power `k`, the
    /// canonical tuple after it, zeros before.
    pub fn from_form(form: &Form, tolerance: Option<f64>) -> Self {
        Self {
            dimension: form.n,
            tail: form
                .law()
                .coefficients()
                .iter()
                .map(|z| [z.re, z.im])
                .collect(),
            tolerance,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}
