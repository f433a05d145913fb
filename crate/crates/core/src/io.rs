//! JSON model files.
//!
//! Schema:
//!
//! ```json
//! {
//!   "dim": 2,
//!   "bands": 2,
//!   "hoppings": [
//!     { "a": [0, 0], "re": [[1.0, 0.0], [0.0, -1.0]], "im": [[0.0, 0.0], [0.0, 0.0]] }
//!   ],
//!   "trs": { "u_re": [[1.0, 0.0], [0.0, 1.0]] }
//! }
//! ```
//!
//! Matrices are row-major; a missing "im" (or "u_im") means zero. The
//! optional "trs" block carries only the unitary part of the anti-unitary;
//! its sign is always computed, never user-asserted.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{cplx, CMatrix};
use crate::model::{build_model, HoppingModel};
use crate::symmetry::{classify_datum, TimeReversalDatum};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModelFile {
    pub dim: usize,
    pub bands: usize,
    pub hoppings: Vec<HoppingEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trs: Option<TrsEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HoppingEntry {
    pub a: Vec<i64>,
    pub re: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrsEntry {
    pub u_re: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u_im: Option<Vec<Vec<f64>>>,
}

fn matrix_from_parts(
    re: &[Vec<f64>],
    im: Option<&Vec<Vec<f64>>>,
    what: &str,
) -> Result<CMatrix> {
    let rows = re.len();
    if rows == 0 {
        return Err(Error::InvalidInput(format!("{what}: empty matrix")));
    }
    let cols = re[0].len();
    if re.iter().any(|row| row.len() != cols) {
        return Err(Error::InvalidInput(format!("{what}: ragged \"re\" rows")));
    }
    if let Some(im) = im {
        if im.len() != rows || im.iter().any(|row| row.len() != cols) {
            return Err(Error::InvalidInput(format!(
                "{what}: \"im\" shape does not match \"re\""
            )));
        }
    }
    Ok(CMatrix::from_fn(rows, cols, |i, j| {
        cplx(re[i][j], im.map_or(0.0, |im| im[i][j]))
    }))
}

/// Parses a model document; shape errors surface with the entry index and
/// symmetrization happens in [`build_model`].
pub fn parse_model(json: &str) -> Result<(HoppingModel, Option<TimeReversalDatum>)> {
    let file: ModelFile = serde_json::from_str(json)?;
    model_from_file(&file)
}

pub fn model_from_file(file: &ModelFile) -> Result<(HoppingModel, Option<TimeReversalDatum>)> {
    let mut list = Vec::with_capacity(file.hoppings.len());
    for (index, entry) in file.hoppings.iter().enumerate() {
        let matrix = matrix_from_parts(&entry.re, entry.im.as_ref(), &format!("hopping {index}"))?;
        list.push((entry.a.clone(), matrix));
    }
    let model = build_model(file.dim, file.bands, &list)?;
    let trs = match &file.trs {
        None => None,
        Some(entry) => {
            let u = matrix_from_parts(&entry.u_re, entry.u_im.as_ref(), "trs")?;
            Some(classify_datum(&u)?)
        }
    };
    Ok((model, trs))
}

pub fn load_model(path: &std::path::Path) -> Result<(HoppingModel, Option<TimeReversalDatum>)> {
    parse_model(&std::fs::read_to_string(path)?)
}

/// Serializable form of a model (with optional time-reversal unitary).
pub fn model_to_file(model: &HoppingModel, trs: Option<&TimeReversalDatum>) -> ModelFile {
    let hoppings = model
        .hoppings()
        .map(|(a, h)| HoppingEntry {
            a: a.clone(),
            re: (0..h.nrows())
                .map(|i| (0..h.ncols()).map(|j| h[(i, j)].re).collect())
                .collect(),
            im: Some(
                (0..h.nrows())
                    .map(|i| (0..h.ncols()).map(|j| h[(i, j)].im).collect())
                    .collect(),
            ),
        })
        .collect();
    ModelFile {
        dim: model.dim(),
        bands: model.bands(),
        hoppings,
        trs: trs.map(|t| TrsEntry {
            u_re: (0..t.unitary.nrows())
                .map(|i| (0..t.unitary.ncols()).map(|j| t.unitary[(i, j)].re).collect())
                .collect(),
            u_im: Some(
                (0..t.unitary.nrows())
                    .map(|i| (0..t.unitary.ncols()).map(|j| t.unitary[(i, j)].im).collect())
                    .collect(),
            ),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs;
    use crate::presets::{doubled_qwz, qwz};

    #[test]
    fn parses_a_minimal_document_without_im() {
        let json = r#"{
            "dim": 1,
            "bands": 1,
            "hoppings": [ { "a": [1], "re": [[1.0]] } ]
        }"#;
        let (model, trs) = parse_model(json).unwrap();
        assert_eq!(model.dim(), 1);
        assert_eq!(model.support_len(), 2);
        assert!(trs.is_none());
    }

    #[test]
    fn round_trips_a_complex_model_with_datum() {
        let (model, datum) = doubled_qwz(0.8);
        let file = model_to_file(&model, Some(&datum));
        let json = serde_json::to_string(&file).unwrap();
        let (back, back_datum) = parse_model(&json).unwrap();
        assert_eq!(back.support_len(), model.support_len());
        for (a, h) in model.hoppings() {
            assert!(max_abs(&(back.coefficient(a).unwrap() - h)) < 1e-15);
        }
        assert_eq!(back_datum.unwrap().sign, -1);
    }

    #[test]
    fn ragged_matrices_are_rejected() {
        let json = r#"{
            "dim": 1,
            "bands": 2,
            "hoppings": [ { "a": [0], "re": [[1.0, 0.0], [0.0]] } ]
        }"#;
        assert!(parse_model(json).is_err());
    }

    #[test]
    fn trs_sign_is_computed_not_asserted() {
        let model = qwz(1.0);
        let file = model_to_file(&model, None);
        let mut value = serde_json::to_value(&file).unwrap();
        value["trs"] = serde_json::json!({
            "u_re": [[0.0, 1.0], [-1.0, 0.0]]
        });
        let (_, datum) = parse_model(&value.to_string()).unwrap();
        assert_eq!(datum.unwrap().sign, -1);
    }
}
