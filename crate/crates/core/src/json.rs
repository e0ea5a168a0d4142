//! JSON form of modules.
//!
//! ```json
//! {"field": "Q", "window": [-1, 0], "dims": {"1@0": 1, "2@0": 1}, "mats": {"a0": [["1"]]}}
//! ```
//!
//! Scalars are written as strings (`"3/4"`, or a residue over `F_p`) and
//! accepted as strings or integers. Omitted arrows are zero. The window may be
//! omitted, in which case the bounding window of the listed vertices is used.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::quiver::{Arrow, QuiverWindow, Vertex};
use crate::rep::{Representation, RelationViolation};
use crate::scalar::{Field, Scalar};

pub fn matrix_to_json(m: &Matrix) -> Value {
    Value::Array(
        m.row_vecs()
            .into_iter()
            .map(|row| Value::Array(row.iter().map(|x| Value::String(x.to_string())).collect()))
            .collect(),
    )
}

pub fn module_to_json(m: &Representation) -> Value {
    let dims: Map<String, Value> = m
        .dim_vector()
        .into_iter()
        .map(|(v, d)| (v.to_string(), json!(d)))
        .collect();
    let mats: Map<String, Value> = m
        .arrow_matrices()
        .iter()
        .filter(|(_, x)| !x.is_zero())
        .map(|(a, x)| (a.to_string(), matrix_to_json(x)))
        .collect();
    json!({
        "field": m.field().to_string(),
        "window": [m.window().z_min(), m.window().z_max()],
        "dims": dims,
        "mats": mats,
    })
}

pub fn violations_to_json(violations: &[RelationViolation]) -> Value {
    Value::Array(
        violations
            .iter()
            .map(|v| json!({"relation": v.relation.to_string(), "residual": matrix_to_json(&v.residual)}))
            .collect(),
    )
}

fn parse_scalar_value(field: Field, v: &Value) -> Result<Scalar> {
    match v {
        Value::String(s) => field.parse_scalar(s),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(field.from_i64(i)),
            None => field.parse_scalar(&n.to_string()),
        },
        other => Err(Error::Parse(format!("expected a scalar, found {other}"))),
    }
}

fn parse_matrix(field: Field, arrow: Arrow, v: &Value, shape: (usize, usize)) -> Result<Matrix> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("matrix for {arrow} must be an array of rows")))?;
    let mismatch = |found: String| {
        Error::ShapeMismatch(format!(
            "arrow {arrow} expects a {}x{} matrix, found {found}",
            shape.0, shape.1
        ))
    };
    // An empty list stands for any matrix with a zero dimension.
    if rows.is_empty() && (shape.0 == 0 || shape.1 == 0) {
        return Ok(Matrix::zeros(field, shape.0, shape.1));
    }
    if rows.len() != shape.0 {
        return Err(mismatch(format!("{} rows", rows.len())));
    }
    let mut parsed = Vec::with_capacity(rows.len());
    for row in rows {
        let row = row
            .as_array()
            .ok_or_else(|| Error::Parse(format!("row of matrix for {arrow} must be an array")))?;
        if row.len() != shape.1 {
            return Err(mismatch(format!("a row of length {}", row.len())));
        }
        parsed.push(row.iter().map(|x| parse_scalar_value(field, x)).collect::<Result<Vec<_>>>()?);
    }
    Matrix::from_rows(field, parsed)
}

/// Reads a module. `field` overrides a missing `"field"` entry and must agree
/// with a present one.
pub fn module_from_json(v: &Value, field: Option<Field>) -> Result<Representation> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("module JSON must be an object".into()))?;
    let declared = match obj.get("field") {
        Some(Value::String(s)) => Some(s.parse::<Field>()?),
        Some(other) => return Err(Error::Parse(format!("field must be a string, found {other}"))),
        None => None,
    };
    let field = match (declared, field) {
        (Some(a), Some(b)) if a != b => return Err(Error::FieldMismatch(a.to_string(), b.to_string())),
        (Some(a), _) => a,
        (None, Some(b)) => b,
        (None, None) => Field::Rationals,
    };

    let mut dims = BTreeMap::new();
    if let Some(d) = obj.get("dims") {
        let d = d
            .as_object()
            .ok_or_else(|| Error::Parse("dims must be an object".into()))?;
        for (k, n) in d {
            let vertex: Vertex = k.parse()?;
            let n = n
                .as_u64()
                .ok_or_else(|| Error::Parse(format!("dimension at {k} must be a non-negative integer")))?;
            dims.insert(vertex, n as usize);
        }
    }

    let window = match obj.get("window") {
        Some(w) => {
            let bounds = w
                .as_array()
                .filter(|a| a.len() == 2)
                .and_then(|a| Some((a[0].as_i64()?, a[1].as_i64()?)))
                .ok_or_else(|| Error::Parse("window must be [z_min, z_max]".into()))?;
            QuiverWindow::new(bounds.0, bounds.1)?
        }
        None => {
            let zs: Vec<i64> = dims.iter().filter(|(_, &d)| d > 0).map(|(v, _)| v.z).collect();
            match (zs.iter().min(), zs.iter().max()) {
                (Some(&lo), Some(&hi)) => QuiverWindow::new(lo, hi)?,
                _ => QuiverWindow::new(0, 0)?,
            }
        }
    };

    let mut mats = BTreeMap::new();
    if let Some(m) = obj.get("mats") {
        let m = m
            .as_object()
            .ok_or_else(|| Error::Parse("mats must be an object".into()))?;
        for (k, x) in m {
            let arrow: Arrow = k.parse()?;
            let dim = |v: Vertex| dims.get(&v).copied().unwrap_or(0);
            let shape = (dim(arrow.target()), dim(arrow.source()));
            mats.insert(arrow, parse_matrix(field, arrow, x, shape)?);
        }
    }
    Representation::new(field, window, dims, mats)
}

pub fn module_from_str(text: &str, field: Option<Field>) -> Result<Representation> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    module_from_json(&v, field)
}
