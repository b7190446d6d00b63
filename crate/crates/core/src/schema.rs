//! JSON state files.
//!
//! A state file is an object with exactly one of the keys
//!
//! * `"matrix"`: 4×4 array of `[re, im]` pairs, row-major;
//! * `"hs"`: `{"r": [3], "s": [3], "t": [[3×3]]}` with `t` row-major;
//! * `"bell_diag"`: `{"p": [4]}`;
//! * `"werner"`: `{"p": number}`.
//!
//! Schema problems are reported with the JSON pointer of the offending value.

use nalgebra::{Matrix3, Vector3};
use serde_json::Value;
use thiserror::Error;

use crate::error::Error;
use crate::linalg::{Mat4, C64};
use crate::state::{bell_diagonal, from_hs, werner, BellSpectrum, DensityMatrix, HsParams, Tolerances};

#[derive(Debug, Clone, PartialEq, Error)]
#[error("{}: {message}", if pointer.is_empty() { "/" } else { pointer })]
pub struct SchemaError {
    /// JSON pointer (RFC 6901) to the offending value; empty for the root.
    pub pointer: String,
    pub message: String,
}

fn schema_err(pointer: impl Into<String>, message: impl Into<String>) -> SchemaError {
    SchemaError {
        pointer: pointer.into(),
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum StateSpec {
    Matrix(Mat4),
    Hs(HsParams),
    BellDiag([f64; 4]),
    Werner(f64),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StateFileError {
    #[error("schema violation at {0}")]
    Schema(#[from] SchemaError),
    #[error(transparent)]
    State(#[from] Error),
}

const KEYS: [&str; 4] = ["matrix", "hs", "bell_diag", "werner"];

impl StateSpec {
    pub fn from_json(value: &Value) -> Result<Self, SchemaError> {
        let obj = value
            .as_object()
            .ok_or_else(|| schema_err("", "state must be a JSON object"))?;
        if let Some(unknown) = obj.keys().find(|k| !KEYS.contains(&k.as_str())) {
            return Err(schema_err(
                format!("/{}", escape(unknown)),
                format!("unknown key; expected one of {KEYS:?}"),
            ));
        }
        let present: Vec<&str> = KEYS.iter().copied().filter(|k| obj.contains_key(*k)).collect();
        let key = match present.as_slice() {
            [one] => *one,
            [] => return Err(schema_err("", format!("expected exactly one of {KEYS:?}"))),
            _ => return Err(schema_err("", format!("keys {present:?} are mutually exclusive"))),
        };
        let body = &obj[key];
        let base = format!("/{key}");
        match key {
            "matrix" => {
                let rows = array_of_len(body, 4, &base)?;
                let mut m = Mat4::zeros();
                for (i, row) in rows.iter().enumerate() {
                    let row_ptr = format!("{base}/{i}");
                    let cells = array_of_len(row, 4, &row_ptr)?;
                    for (j, cell) in cells.iter().enumerate() {
                        let cell_ptr = format!("{row_ptr}/{j}");
                        let pair = array_of_len(cell, 2, &cell_ptr)?;
                        let re = number(&pair[0], &format!("{cell_ptr}/0"))?;
                        let im = number(&pair[1], &format!("{cell_ptr}/1"))?;
                        m[(i, j)] = C64::new(re, im);
                    }
                }
                Ok(StateSpec::Matrix(m))
            }
            "hs" => {
                let obj = object_with(body, &["r", "s", "t"], &base)?;
                let r = vec3(&obj["r"], &format!("{base}/r"))?;
                let s = vec3(&obj["s"], &format!("{base}/s"))?;
                let t_ptr = format!("{base}/t");
                let rows = array_of_len(&obj["t"], 3, &t_ptr)?;
                let mut t = Matrix3::zeros();
                for (i, row) in rows.iter().enumerate() {
                    let row_ptr = format!("{t_ptr}/{i}");
                    let v = vec3(row, &row_ptr)?;
                    for j in 0..3 {
                        t[(i, j)] = v[j];
                    }
                }
                Ok(StateSpec::Hs(HsParams::new(r, s, t)))
            }
            "bell_diag" => {
                let obj = object_with(body, &["p"], &base)?;
                let p_ptr = format!("{base}/p");
                let items = array_of_len(&obj["p"], 4, &p_ptr)?;
                let mut p = [0.0; 4];
                for (i, item) in items.iter().enumerate() {
                    p[i] = number(item, &format!("{p_ptr}/{i}"))?;
                }
                Ok(StateSpec::BellDiag(p))
            }
            _ => {
                let obj = object_with(body, &["p"], &base)?;
                Ok(StateSpec::Werner(number(&obj["p"], &format!("{base}/p"))?))
            }
        }
    }

    /// Builds and validates the state with ingestion tolerances.
    pub fn build(&self) -> Result<DensityMatrix, Error> {
        match self {
            StateSpec::Matrix(m) => DensityMatrix::from_matrix(*m, Tolerances::INGEST),
            StateSpec::Hs(hs) => from_hs(hs, Tolerances::INGEST),
            StateSpec::BellDiag(p) => Ok(bell_diagonal(&BellSpectrum::new(*p)?)),
            StateSpec::Werner(p) => werner(*p),
        }
    }
}

/// Parses and builds a state from JSON text.
pub fn parse_state(text: &str) -> Result<(Value, DensityMatrix), StateFileError> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| schema_err("", format!("invalid JSON: {e}")))?;
    let spec = StateSpec::from_json(&value)?;
    let rho = spec.build()?;
    Ok((value, rho))
}

fn escape(key: &str) -> String {
    key.replace('~', "~0").replace('/', "~1")
}

fn array_of_len<'a>(v: &'a Value, len: usize, ptr: &str) -> Result<&'a Vec<Value>, SchemaError> {
    let arr = v
        .as_array()
        .ok_or_else(|| schema_err(ptr, format!("expected an array of length {len}")))?;
    if arr.len() != len {
        return Err(schema_err(ptr, format!("expected length {len}, found {}", arr.len())));
    }
    Ok(arr)
}

fn object_with<'a>(
    v: &'a Value,
    keys: &[&str],
    ptr: &str,
) -> Result<&'a serde_json::Map<String, Value>, SchemaError> {
    let obj = v
        .as_object()
        .ok_or_else(|| schema_err(ptr, format!("expected an object with keys {keys:?}")))?;
    for k in keys {
        if !obj.contains_key(*k) {
            return Err(schema_err(format!("{ptr}/{}", escape(k)), "missing required key"));
        }
    }
    if let Some(extra) = obj.keys().find(|k| !keys.contains(&k.as_str())) {
        return Err(schema_err(format!("{ptr}/{}", escape(extra)), "unexpected key"));
    }
    Ok(obj)
}

fn number(v: &Value, ptr: &str) -> Result<f64, SchemaError> {
    v.as_f64().ok_or_else(|| schema_err(ptr, "expected a number"))
}

fn vec3(v: &Value, ptr: &str) -> Result<Vector3<f64>, SchemaError> {
    let arr = array_of_len(v, 3, ptr)?;
    let mut out = Vector3::zeros();
    for (i, item) in arr.iter().enumerate() {
        out[i] = number(item, &format!("{ptr}/{i}"))?;
    }
    Ok(out)
}
