//! The on-disk algebra document: a sparse bracket table with an optional
//! metric and vertical index set. JSON, strict fields, `i < j` entries only.

use folia_core::lie::{BracketEntry, LieAlgebra};
use folia_core::metric::MetricTensor;
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Densely stored structure constants are capped at this dimension.
pub const MAX_DIMENSION: usize = 16;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct BracketEntryDoc {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub dimension: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_names: Option<Vec<String>>,
    #[serde(default)]
    pub brackets: Vec<BracketEntryDoc>,
    /// Row-major symmetric matrix; identity when omitted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertical: Option<Vec<usize>>,
}

impl AlgebraDocument {
    /// Parse and validate a document from JSON text.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let doc: AlgebraDocument =
            serde_json::from_str(text).map_err(|e| CliError::input(format!("parse error: {e}")))?;
        doc.validate()?;
        Ok(doc)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let n = self.dimension;
        if n == 0 {
            return Err(CliError::input("dimension must be positive"));
        }
        if n > MAX_DIMENSION {
            return Err(CliError::input(format!(
                "dimension {n} exceeds the supported maximum {MAX_DIMENSION}"
            )));
        }
        if let Some(names) = &self.basis_names {
            if names.len() != n {
                return Err(CliError::input(format!(
                    "basis_names has {} entries for dimension {n}",
                    names.len()
                )));
            }
        }
        for (idx, e) in self.brackets.iter().enumerate() {
            if e.i >= e.j {
                return Err(CliError::input(format!(
                    "brackets[{idx}]: bracket indices must satisfy i < j (got i={}, j={})",
                    e.i, e.j
                )));
            }
            for (field, v) in [("i", e.i), ("j", e.j), ("k", e.k)] {
                if v >= n {
                    return Err(CliError::input(format!(
                        "brackets[{idx}].{field}: index {v} out of range for dimension {n}"
                    )));
                }
            }
            if !e.value.is_finite() {
                return Err(CliError::input(format!("brackets[{idx}].value is not finite")));
            }
        }
        if let Some(rows) = &self.metric {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(CliError::input(format!(
                    "metric must be a {n}x{n} matrix"
                )));
            }
            let scale = rows
                .iter()
                .flatten()
                .fold(1.0_f64, |m, v| m.max(v.abs()));
            for a in 0..n {
                for b in (a + 1)..n {
                    if (rows[a][b] - rows[b][a]).abs() > 1e-12 * scale {
                        return Err(CliError::input(format!(
                            "metric is not symmetric at ({a}, {b})"
                        )));
                    }
                }
            }
        }
        if let Some(vertical) = &self.vertical {
            let mut seen = vec![false; n];
            for &v in vertical {
                if v >= n {
                    return Err(CliError::input(format!(
                        "vertical index {v} out of range for dimension {n}"
                    )));
                }
                if seen[v] {
                    return Err(CliError::input(format!("duplicate vertical index {v}")));
                }
                seen[v] = true;
            }
        }
        Ok(())
    }

    /// Whether the metric defaulted to the identity.
    pub fn metric_assumed(&self) -> bool {
        self.metric.is_none()
    }

    pub fn algebra(&self) -> Result<LieAlgebra, CliError> {
        let entries: Vec<BracketEntry> = self
            .brackets
            .iter()
            .map(|e| BracketEntry::new(e.i, e.j, e.k, e.value))
            .collect();
        let mut l = LieAlgebra::new(self.dimension, &entries)
            .map_err(|e| CliError::input(e.to_string()))?;
        if let Some(names) = &self.basis_names {
            l = l
                .with_basis_names(names.clone())
                .map_err(|e| CliError::input(e.to_string()))?;
        }
        Ok(l)
    }

    pub fn metric_tensor(&self) -> Result<MetricTensor, CliError> {
        match &self.metric {
            None => Ok(MetricTensor::identity(self.dimension)),
            Some(rows) => {
                let n = self.dimension;
                let m = DMatrix::from_fn(n, n, |r, c| rows[r][c]);
                MetricTensor::from_matrix(m).map_err(|e| CliError::input(e.to_string()))
            }
        }
    }

    /// Canonical document for an algebra/metric pair: sorted brackets, the
    /// metric written out explicitly.
    pub fn from_parts(
        algebra: &LieAlgebra,
        metric: &MetricTensor,
        vertical: Option<&[usize]>,
    ) -> Self {
        let n = algebra.dim();
        let brackets = algebra
            .entries()
            .into_iter()
            .map(|e| BracketEntryDoc {
                i: e.i,
                j: e.j,
                k: e.k,
                value: e.value,
            })
            .collect();
        let metric_rows = (0..n)
            .map(|r| (0..n).map(|c| metric.matrix()[(r, c)]).collect())
            .collect();
        AlgebraDocument {
            dimension: n,
            basis_names: algebra.basis_names().map(|s| s.to_vec()),
            brackets,
            metric: Some(metric_rows),
            vertical: vertical.map(|v| v.to_vec()),
        }
    }

    /// Render as pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }
}
