//! JSON file formats.
//!
//! A state file is `{"dims": [..], "matrix": [[re, im], ...]}` with the matrix
//! flattened row-major. A unitary (basis) file has the same `matrix` field,
//! an optional `"label"`, and no `dims`; its columns are the basis vectors.
//! The writer prints every number with 17 significant digits so a file
//! round-trips bit-exactly.

use std::fmt::Write as _;

use num_complex::Complex64;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::states::{Basis, DensityMatrix};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StateFile {
    dims: Vec<usize>,
    matrix: Vec<[f64; 2]>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct UnitaryFile {
    matrix: Vec<[f64; 2]>,
    #[serde(default)]
    label: Option<String>,
}

fn square_from_pairs(pairs: &[[f64; 2]], field: &str) -> Result<ComplexMatrix> {
    let len = pairs.len();
    let dim = (len as f64).sqrt().round() as usize;
    if dim == 0 || dim * dim != len {
        return Err(Error::Parse(format!(
            "field `{field}` has {len} entries, which is not a square number"
        )));
    }
    if pairs.iter().flatten().any(|x| !x.is_finite()) {
        return Err(Error::Parse(format!("field `{field}` contains a non-finite number")));
    }
    let entries = pairs.iter().map(|[re, im]| Complex64::new(*re, *im)).collect();
    ComplexMatrix::from_entries(dim, entries)
}

pub fn parse_state(json: &str) -> Result<DensityMatrix> {
    let file: StateFile = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    let matrix = square_from_pairs(&file.matrix, "matrix")?;
    let product: usize = file.dims.iter().product();
    if file.dims.is_empty() || product != matrix.dim() {
        return Err(Error::Parse(format!(
            "field `dims` = {:?} does not match the {}x{} matrix",
            file.dims,
            matrix.dim(),
            matrix.dim()
        )));
    }
    DensityMatrix::new(matrix, file.dims)
}

pub fn parse_unitary(json: &str) -> Result<Basis> {
    let file: UnitaryFile = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    let matrix = square_from_pairs(&file.matrix, "matrix")?;
    Basis::new(matrix, file.label.unwrap_or_else(|| "file".into()))
}

fn push_matrix(out: &mut String, m: &ComplexMatrix) {
    out.push_str("\"matrix\": [");
    for (k, z) in m.entries().iter().enumerate() {
        if k > 0 {
            out.push_str(", ");
        }
        write!(out, "[{:.16e}, {:.16e}]", z.re, z.im).expect("writing to String");
    }
    out.push(']');
}

pub fn state_to_json(rho: &DensityMatrix) -> String {
    let dims: Vec<String> = rho.dims().iter().map(|d| d.to_string()).collect();
    let mut out = format!("{{\"dims\": [{}], ", dims.join(", "));
    push_matrix(&mut out, rho.matrix());
    out.push_str("}\n");
    out
}

pub fn unitary_to_json(basis: &Basis) -> String {
    let mut out = String::from("{");
    push_matrix(&mut out, basis.unitary());
    out.push_str(", \"label\": ");
    out.push_str(&serde_json::to_string(basis.label()).expect("string serializes"));
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{fourier_basis, maximally_mixed, random_mixed};

    #[test]
    fn state_round_trip_is_exact() {
        let rho = random_mixed(3, 11).with_dims(vec![3]).unwrap();
        let back = parse_state(&state_to_json(&rho)).unwrap();
        assert_eq!(back, rho);
    }

    #[test]
    fn writer_uses_17_significant_digits() {
        let json = state_to_json(&maximally_mixed(&[2, 2]));
        assert!(json.starts_with("{\"dims\": [2, 2], \"matrix\": [[2.5000000000000000e-1, 0.0000000000000000e0], "), "{json}");
    }

    #[test]
    fn unitary_round_trip() {
        let b = fourier_basis(3);
        let back = parse_unitary(&unitary_to_json(&b)).unwrap();
        assert_eq!(back, b);
    }

    #[test]
    fn errors_name_the_offending_field() {
        let err = parse_state(r#"{"dims": [2], "matrix": [[1,0],[0,0],[0,0]]}"#).unwrap_err();
        assert!(err.to_string().contains("`matrix`"), "{err}");
        let err = parse_state(r#"{"dims": [3], "matrix": [[1,0],[0,0],[0,0],[0,0]]}"#).unwrap_err();
        assert!(err.to_string().contains("`dims`"), "{err}");
        let err = parse_state(r#"{"matrix": [[1,0]]}"#).unwrap_err();
        assert!(err.to_string().contains("dims"), "{err}");
        assert!(parse_state("not json").is_err());
        // valid shape but not a state
        let err = parse_state(r#"{"dims": [2], "matrix": [[1,0],[0,0],[0,0],[1,0]]}"#).unwrap_err();
        assert!(matches!(err, Error::InvalidTrace { .. }));
    }
}
