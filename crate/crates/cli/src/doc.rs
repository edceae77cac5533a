//! Matrix documents: JSON objects `{"field": "Q(t)", "name": "A", "matrix": [["t", "1"], ...]}`.

use std::fs;
use std::path::Path;

use archiclass::echelon::ClassDescriptor;
use archiclass::field::{Backend, FieldElement, OrderedField, Valuation};
use archiclass::matrix::Matrix;
use archiclass::parse::parse_entry;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::Failure;

#[derive(Deserialize)]
struct RawDocument {
    field: Option<String>,
    name: Option<String>,
    matrix: Vec<Vec<Value>>,
}

/// A parsed input document.
pub struct Document {
    pub backend: Backend,
    pub name: String,
    pub matrix: Matrix<FieldElement>,
}

/// Reads a document. `flag` is the `--field` override; a document whose own
/// `field` disagrees with it is rejected.
pub fn read(path: &Path, flag: Option<Backend>) -> Result<Document, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::new(format!("cannot read {}: {e}", path.display())))?;
    let raw: RawDocument = serde_json::from_str(&text)
        .map_err(|e| Failure::new(format!("{}: not a matrix document: {e}", path.display())))?;
    let declared = raw
        .field
        .as_deref()
        .map(str::parse::<Backend>)
        .transpose()
        .map_err(|e| Failure::new(format!("{}: {e}", path.display())))?;
    let backend = match (declared, flag) {
        (Some(d), Some(f)) if d != f => {
            return Err(Failure::new(format!(
                "{}: document field {d} conflicts with --field {f}",
                path.display()
            )))
        }
        (Some(d), _) => d,
        (None, Some(f)) => f,
        (None, None) => {
            return Err(Failure::new(format!(
                "{}: no field given; add \"field\" or pass --field",
                path.display()
            )))
        }
    };
    let cols = raw.matrix.first().map_or(0, Vec::len);
    let mut rows = Vec::with_capacity(raw.matrix.len());
    for (i, row) in raw.matrix.iter().enumerate() {
        let mut parsed = Vec::with_capacity(row.len());
        for (j, cell) in row.iter().enumerate() {
            let src = match cell {
                Value::String(s) => s.clone(),
                Value::Number(n) => n.to_string(),
                other => {
                    return Err(Failure::new(format!(
                        "{}: entry ({}, {}) must be a string or number, found {other}",
                        path.display(),
                        i + 1,
                        j + 1
                    )))
                }
            };
            let e = parse_entry(&src, backend).map_err(|e| {
                Failure::new(format!("{}: entry ({}, {}) `{src}`: {e}", path.display(), i + 1, j + 1))
            })?;
            parsed.push(e);
        }
        rows.push(parsed);
    }
    let matrix = Matrix::from_element_rows(cols, rows)
        .map_err(|e| Failure::new(format!("{}: {e}", path.display())))?;
    let name = raw.name.unwrap_or_else(|| {
        path.file_stem()
            .map_or_else(|| "matrix".into(), |s| s.to_string_lossy().into_owned())
    });
    Ok(Document {
        backend,
        name,
        matrix,
    })
}

/// Entry strings of a matrix, row by row.
pub fn entries<F: OrderedField>(m: &Matrix<F>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(|x| Value::String(x.to_string())).collect()))
            .collect(),
    )
}

/// A matrix document that reads back as the same matrix.
pub fn matrix_document<F: OrderedField>(name: &str, m: &Matrix<F>) -> Value {
    json!({
        "field": F::BACKEND.name(),
        "name": name,
        "matrix": entries(m),
    })
}

pub fn valuation(v: Valuation) -> Value {
    match v {
        Valuation::Finite(k) => json!(k),
        Valuation::Infinity => json!("infinity"),
    }
}

/// Shape positions and pivots, one-based.
pub fn descriptor(d: &ClassDescriptor) -> Value {
    let one_based = |&(i, j): &(usize, usize)| json!([i + 1, j + 1]);
    json!({
        "zero_class": d.shape.is_empty(),
        "shape": d.shape.positions.iter().map(one_based).collect::<Vec<_>>(),
        "shape_text": d.shape.to_string(),
        "pivots": d.shape.pivots.iter().map(one_based).collect::<Vec<_>>(),
        "pivot_valuations": d.pivot_valuations.iter().map(|&v| valuation(v)).collect::<Vec<_>>(),
    })
}
