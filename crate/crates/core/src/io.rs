//! Matrix and frame file formats.
//!
//! * Matrix JSON: `{"rows": m, "cols": n, "data": [[re, im], ...]}`, row-major.
//! * Matrix CSV: real entries, one row per line.
//! * Frame JSON: `{"ambient_dim": m, "vectors": [[[re, im], ...], ...]}`.
//! * Frame CSV: real entries, one vector per line.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frames::Frame;
use crate::linalg::MatrixC;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<[f64; 2]>,
}

impl From<&MatrixC> for MatrixJson {
    fn from(m: &MatrixC) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            data: m.row_major().iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl TryFrom<MatrixJson> for MatrixC {
    type Error = Error;

    fn try_from(j: MatrixJson) -> Result<Self> {
        MatrixC::new(
            j.rows,
            j.cols,
            j.data
                .iter()
                .map(|&[re, im]| Complex64::new(re, im))
                .collect(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameJson {
    pub ambient_dim: usize,
    pub vectors: Vec<Vec<[f64; 2]>>,
}

impl From<&Frame> for FrameJson {
    fn from(fr: &Frame) -> Self {
        Self {
            ambient_dim: fr.ambient_dim(),
            vectors: fr
                .vectors()
                .iter()
                .map(|v| v.iter().map(|z| [z.re, z.im]).collect())
                .collect(),
        }
    }
}

impl TryFrom<FrameJson> for Frame {
    type Error = Error;

    fn try_from(j: FrameJson) -> Result<Self> {
        Frame::new(
            j.ambient_dim,
            j.vectors
                .iter()
                .map(|v| v.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
                .collect(),
        )
    }
}

fn looks_like_json(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

/// Rows of real decimal literals.
pub fn parse_real_csv(text: &str) -> Result<Vec<Vec<f64>>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::InvalidInput(format!("csv: {e}")))?;
        if record.iter().all(|f| f.is_empty()) {
            continue;
        }
        let row = record
            .iter()
            .map(|field| {
                field.parse::<f64>().map_err(|_| {
                    Error::InvalidInput(format!("csv line {}: `{field}` is not a number", line + 1))
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::InvalidInput("csv input has no rows".into()));
    }
    Ok(rows)
}

/// Parses a matrix from JSON or real CSV (detected from the content).
pub fn parse_matrix(text: &str) -> Result<MatrixC> {
    if looks_like_json(text) {
        let j: MatrixJson = serde_json::from_str(text)
            .map_err(|e| Error::InvalidInput(format!("matrix json: {e}")))?;
        MatrixC::try_from(j)
    } else {
        MatrixC::from_real_rows(&parse_real_csv(text)?)
    }
}

/// Parses a frame from JSON or real CSV (one vector per line).
pub fn parse_frame(text: &str) -> Result<Frame> {
    if looks_like_json(text) {
        let j: FrameJson = serde_json::from_str(text)
            .map_err(|e| Error::InvalidInput(format!("frame json: {e}")))?;
        Frame::try_from(j)
    } else {
        let rows = parse_real_csv(text)?;
        let m = rows[0].len();
        Frame::new(
            m,
            rows.iter()
                .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
                .collect(),
        )
    }
}

pub fn read_matrix(path: &Path) -> Result<MatrixC> {
    parse_matrix(&fs::read_to_string(path)?)
}

pub fn read_frame(path: &Path) -> Result<Frame> {
    parse_frame(&fs::read_to_string(path)?)
}

pub fn matrix_to_json(m: &MatrixC) -> String {
    serde_json::to_string(&MatrixJson::from(m)).expect("serializable")
}

pub fn frame_to_json(fr: &Frame) -> String {
    serde_json::to_string(&FrameJson::from(fr)).expect("serializable")
}
