//! Representation files for `tangent rep`: a JSON description of a finite
//! group with one lower-unitriangular matrix per element.
//!
//! Schema:
//! ```json
//! {
//!   "field": {"p": 3, "n": 1},
//!   "order": 3,
//!   "identity": 0,
//!   "table": [0,1,2, 1,2,0, 2,0,1],
//!   "generators": [1],
//!   "matrices": [ [[[0],[0]],[[0],[0]]], ... ]
//! }
//! ```
//! `table` is the row-major multiplication table (`table[g*order + h] =
//! g*h`); `matrices[g]` is an `n x n` array of field elements, each a
//! power-basis coefficient vector of length `field.n`.

use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;
use serde_json::json;

use defring::ascurve::GroupTable;
use defring::deform::{cocycle_space, Rep};
use defring::ffield::{make_field, FieldElement};
use defring::linalg::Matrix;
use defring::Error;

use crate::Report;

#[derive(Deserialize)]
struct FieldSpec {
    p: u64,
    n: usize,
}

#[derive(Deserialize)]
struct RepFile {
    field: FieldSpec,
    order: usize,
    #[serde(default)]
    identity: usize,
    table: Vec<u32>,
    generators: Vec<usize>,
    matrices: Vec<Vec<Vec<Vec<u64>>>>,
}

pub fn tangent_rep(path: &Path, expected_n: usize) -> Result<Report, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {}", path.display(), e)))?;
    let file: RepFile = serde_json::from_str(&text)
        .map_err(|e| Error::InvalidInput(format!("malformed representation file: {}", e)))?;
    if file.table.len() != file.order * file.order {
        return Err(Error::InvalidInput(
            "table length must be order^2".into(),
        ));
    }
    if file.matrices.len() != file.order {
        return Err(Error::InvalidInput(
            "need exactly one matrix per element".into(),
        ));
    }
    if file.generators.is_empty() || file.generators.iter().any(|&g| g >= file.order) {
        return Err(Error::InvalidInput("bad generator list".into()));
    }
    if file.table.iter().any(|&v| v as usize >= file.order) {
        return Err(Error::InvalidInput("table entry out of range".into()));
    }
    let field = make_field(file.field.p, file.field.n)?;
    let table = Arc::new(GroupTable::new(
        file.order,
        file.identity,
        file.table,
        file.generators,
    ));
    let mats: Vec<Matrix<FieldElement>> = file
        .matrices
        .iter()
        .map(|rows| {
            if rows.len() != expected_n || rows.iter().any(|r| r.len() != expected_n) {
                return Err(Error::InvalidInput(format!(
                    "matrices must be {n} x {n}",
                    n = expected_n
                )));
            }
            let mut data = Vec::with_capacity(expected_n * expected_n);
            for row in rows {
                for entry in row {
                    if entry.len() != field.degree() {
                        return Err(Error::InvalidInput(format!(
                            "field elements need {} coordinates",
                            field.degree()
                        )));
                    }
                    data.push(FieldElement::from_coeffs(&field, entry));
                }
            }
            Ok(Matrix::new(expected_n, expected_n, data))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let rep = Rep::new(table, mats);
    let report = cocycle_space(&rep);
    let human = format!(
        "tangent report for the representation in {}\n  dim cocycles:     {}\n  dim coboundaries: {}\n  dim tangent:      {}",
        path.display(),
        report.dim_cocycles,
        report.dim_coboundaries,
        report.dim_tangent
    );
    Ok(Report {
        human,
        json: json!({
            "dim_cocycles": report.dim_cocycles,
            "dim_coboundaries": report.dim_coboundaries,
            "dim_tangent": report.dim_tangent,
        }),
        failures: 0,
    })
}
