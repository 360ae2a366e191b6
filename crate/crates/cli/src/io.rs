// Copyright 2026 The liedeco Authors
// SPDX-License-Identifier: Apache-2.0

//! JSON and CSV formats.
//!
//! Complex numbers are `[re, im]`, matrices row-major nested arrays. Output
//! floats are written with 17 significant digits and object keys keep
//! insertion order, so identical runs produce identical bytes.

use std::fs;
use std::io;
use std::path::Path;

use liedeco::channel::ChannelSpec;
use liedeco::liealg::{su_basis, LieBasis};
use liedeco::lindblad::NoiseModel;
use liedeco::matcore::{ComplexMatrix, DensityMatrix, C64};
use liedeco::repanalysis::SymmetryBreakSpec;
use nalgebra::{DMatrix, DVector};
use serde::Serialize;
use serde_json::{json, Map, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error(transparent)]
    Lib(#[from] liedeco::Error),
}

pub type Result<T> = std::result::Result<T, CliError>;

fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(CliError::Input(msg.into()))
}

/// serde_json formatter writing every float as `{:.16e}`.
struct FixedDigits;

impl serde_json::ser::Formatter for FixedDigits {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        // fold -0.0 into 0.0 so sign noise from rounding never reaches the bytes
        let value = if value == 0.0 { 0.0 } else { value };
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

/// Compact JSON with fixed-width floats and a trailing newline.
pub fn to_json_string(value: &Value) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FixedDigits);
    value.serialize(&mut ser).expect("serializing a Value into memory cannot fail");
    buf.push(b'\n');
    String::from_utf8(buf).expect("JSON output is UTF-8")
}

/// Writes `text` to `path`, or stdout when no path is given.
pub fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn complex_json(z: C64) -> Value {
    json!([z.re, z.im])
}

pub fn matrix_json(m: &DMatrix<C64>) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|r| Value::Array((0..m.ncols()).map(|c| complex_json(m[(r, c)])).collect()))
            .collect(),
    )
}

pub fn vector_json(v: &DVector<C64>) -> Value {
    Value::Array(v.iter().map(|&z| complex_json(z)).collect())
}

pub fn real_vector_json(v: &[f64]) -> Value {
    Value::Array(v.iter().map(|&x| json!(x)).collect())
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| {
        CliError::Input(format!(
            "{}: malformed JSON at line {}, column {}: {e}",
            path.display(),
            e.line(),
            e.column()
        ))
    })
}

fn parse_complex(v: &Value, field: &str, row: usize, col: usize) -> Result<C64> {
    let pair = match v {
        Value::Array(items) if items.len() == 2 => items,
        Value::Number(n) => {
            let re = n.as_f64().ok_or_else(|| CliError::Input(format!("{field}[{row}][{col}]: not a number")))?;
            return Ok(C64::new(re, 0.0));
        }
        _ => return input(format!("{field}[{row}][{col}]: expected [re, im]")),
    };
    let part = |x: &Value, which: &str| -> Result<f64> {
        match x.as_f64() {
            Some(f) if f.is_finite() => Ok(f),
            _ => input(format!("{field}[{row}][{col}]: {which} part is not a finite number")),
        }
    };
    Ok(C64::new(part(&pair[0], "real")?, part(&pair[1], "imaginary")?))
}

/// Parses a possibly rectangular matrix.
pub fn parse_matrix(v: &Value, field: &str) -> Result<DMatrix<C64>> {
    let rows = v
        .as_array()
        .ok_or_else(|| CliError::Input(format!("{field}: expected a list of rows")))?;
    if rows.is_empty() {
        return input(format!("{field}: matrix has no rows"));
    }
    let mut width = None;
    let mut entries = Vec::new();
    for (r, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| CliError::Input(format!("{field}: row {r} is not a list")))?;
        match width {
            None => width = Some(row.len()),
            Some(w) if w != row.len() => {
                return input(format!("{field}: row {r} has {} entries, expected {w} (ragged rows)", row.len()))
            }
            _ => {}
        }
        for (c, x) in row.iter().enumerate() {
            entries.push(parse_complex(x, field, r, c)?);
        }
    }
    let width = width.unwrap_or(0);
    if width == 0 {
        return input(format!("{field}: matrix has empty rows"));
    }
    Ok(DMatrix::from_row_slice(rows.len(), width, &entries))
}

/// Parses a square matrix.
pub fn parse_square(v: &Value, field: &str) -> Result<ComplexMatrix> {
    let m = parse_matrix(v, field)?;
    if m.nrows() != m.ncols() {
        return input(format!("{field}: matrix is not square ({}x{})", m.nrows(), m.ncols()));
    }
    Ok(m)
}

fn field<'a>(obj: &'a Value, name: &str, ctx: &str) -> Result<&'a Value> {
    obj.get(name)
        .ok_or_else(|| CliError::Input(format!("{ctx}: missing field \"{name}\"")))
}

fn parse_matrix_list(v: &Value, name: &str) -> Result<Vec<ComplexMatrix>> {
    let items = v
        .as_array()
        .ok_or_else(|| CliError::Input(format!("{name}: expected a list of matrices")))?;
    if items.is_empty() {
        return input(format!("{name}: list is empty"));
    }
    let out: Vec<_> = items
        .iter()
        .enumerate()
        .map(|(i, m)| parse_square(m, &format!("{name}[{i}]")))
        .collect::<Result<_>>()?;
    let d = out[0].nrows();
    if let Some((i, m)) = out.iter().enumerate().find(|(_, m)| m.nrows() != d) {
        return input(format!("{name}[{i}]: dimension {} differs from {d}", m.nrows()));
    }
    Ok(out)
}

/// A bare matrix or an object with a `"matrix"` field.
pub fn load_matrix(path: &Path) -> Result<ComplexMatrix> {
    let v = read_json(path)?;
    let ctx = path.display().to_string();
    match v.get("matrix") {
        Some(m) => parse_square(m, &format!("{ctx}: matrix")),
        None => parse_square(&v, &ctx),
    }
}

/// A density matrix file; entries must describe a valid state.
pub fn load_state(path: &Path) -> Result<DensityMatrix> {
    let m = load_matrix(path)?;
    DensityMatrix::new(m).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// `{"operators": [matrix...], "coeffs": matrix}`.
pub fn parse_noise_model(v: &Value) -> Result<NoiseModel> {
    let ops = parse_matrix_list(field(v, "operators", "noise model")?, "operators")?;
    let coeffs = parse_matrix(field(v, "coeffs", "noise model")?, "coeffs")?;
    if coeffs.nrows() != ops.len() || coeffs.ncols() != ops.len() {
        return input(format!(
            "coeffs: expected {0}x{0} for {0} operators, got {1}x{2}",
            ops.len(),
            coeffs.nrows(),
            coeffs.ncols()
        ));
    }
    NoiseModel::new(ops, coeffs).map_err(|e| match e {
        liedeco::Error::NotHermitian { .. } => CliError::Input("coeffs not Hermitian".into()),
        other => CliError::Lib(other),
    })
}

pub fn load_noise_model(path: &Path) -> Result<NoiseModel> {
    parse_noise_model(&read_json(path)?).map_err(|e| prefix(path, e))
}

fn prefix(path: &Path, e: CliError) -> CliError {
    match e {
        CliError::Input(msg) => CliError::Input(format!("{}: {msg}", path.display())),
        other => other,
    }
}

/// `{"n": int, "generators": [matrix...]}`.
pub fn parse_generators(v: &Value) -> Result<LieBasis> {
    let gens = parse_matrix_list(field(v, "generators", "generator file")?, "generators")?;
    if let Some(n) = v.get("n") {
        let n = n.as_u64().ok_or_else(|| CliError::Input("n: expected a positive integer".into()))? as usize;
        if gens[0].nrows() != n {
            return input(format!("generators: matrices are {0}x{0} but n = {n}", gens[0].nrows()));
        }
    }
    Ok(LieBasis::from_generators(gens)?)
}

pub fn load_generators(path: &Path) -> Result<LieBasis> {
    parse_generators(&read_json(path)?).map_err(|e| prefix(path, e))
}

pub fn basis_json(basis: &LieBasis) -> Value {
    let mut obj = Map::new();
    obj.insert("n".into(), json!(basis.dim()));
    obj.insert(
        "generators".into(),
        Value::Array(basis.generators().iter().map(matrix_json).collect()),
    );
    Value::Object(obj)
}

fn parse_p(v: &Value) -> Result<f64> {
    field(v, "p", "channel spec")?
        .as_f64()
        .ok_or_else(|| CliError::Input("p: expected a number".into()))
}

/// `{"algebra": "su", "n": int, "p": real}` or `{"generators": [...], "p": real}`.
pub fn parse_channel_spec(v: &Value) -> Result<ChannelSpec> {
    let p = parse_p(v)?;
    let basis = match v.get("algebra") {
        Some(Value::String(a)) if a == "su" => {
            let n = field(v, "n", "channel spec")?
                .as_u64()
                .ok_or_else(|| CliError::Input("n: expected a positive integer".into()))?;
            su_basis(n as usize)?
        }
        Some(other) => return input(format!("algebra: unsupported value {other}")),
        None => parse_generators(v)?,
    };
    Ok(ChannelSpec::new(basis, p)?)
}

pub fn load_channel_spec(path: &Path) -> Result<ChannelSpec> {
    parse_channel_spec(&read_json(path)?).map_err(|e| prefix(path, e))
}

/// `{"f_ops", "g_ops", "epsilon", "a_tilde", "b_tilde"}`.
pub fn parse_symmetry_spec(v: &Value) -> Result<SymmetryBreakSpec> {
    let ctx = "symmetry-break spec";
    let f_ops = parse_matrix_list(field(v, "f_ops", ctx)?, "f_ops")?;
    let g_ops = parse_matrix_list(field(v, "g_ops", ctx)?, "g_ops")?;
    let epsilon = field(v, "epsilon", ctx)?
        .as_f64()
        .ok_or_else(|| CliError::Input("epsilon: expected a number".into()))?;
    let a_tilde = parse_matrix(field(v, "a_tilde", ctx)?, "a_tilde")?;
    let b_tilde = parse_matrix(field(v, "b_tilde", ctx)?, "b_tilde")?;
    Ok(SymmetryBreakSpec::new(f_ops, g_ops, epsilon, a_tilde, b_tilde)?)
}

pub fn load_symmetry_spec(path: &Path) -> Result<SymmetryBreakSpec> {
    parse_symmetry_spec(&read_json(path)?).map_err(|e| prefix(path, e))
}

/// CSV with a header row; floats use the same 17-digit format as JSON.
pub fn csv_table(header: &[String], rows: &[Vec<f64>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row
            .iter()
            .map(|&x| format!("{:.16e}", if x == 0.0 { 0.0 } else { x }))
            .collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}
