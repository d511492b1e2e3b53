//! JSON point files. Matrices are `{"rows": r, "cols": c, "entries": [[..]]}`
//! with entries given as integers or strings (`"a/b"` over the rationals).
//! Composite points nest matrices under named fields. Every invariant of the
//! target type is enforced while parsing.

use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::conormal::{CotangentMatrixPoint, SpringerFlagPoint, SpringerGrassPoint};
use crate::exactla::{Field, Matrix, Subspace};
use crate::varieties::Flag;
use crate::{Error, Result};

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum RawScalar {
    Int(i64),
    Text(String),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<RawScalar>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpringerFlag {
    flag: RawMatrix,
    z: RawMatrix,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpringerGrass {
    basis: RawMatrix,
    x: RawMatrix,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCotangent {
    x: RawMatrix,
    y: RawMatrix,
}

/// Which typed point a file holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PointKind {
    /// A square or rectangular matrix.
    Matrix,
    /// A flag, given by an invertible generator matrix.
    Flag,
    /// A Grassmannian point, given by a matrix whose columns are a basis.
    Grass,
    /// `{"flag": generator, "z": matrix}`.
    SpringerFlag,
    /// `{"basis": columns of V, "x": matrix}`.
    SpringerGrass,
    /// `{"x": matrix, "y": matrix}`.
    Cotangent,
}

impl FromStr for PointKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "matrix" => Self::Matrix,
            "flag" => Self::Flag,
            "grass" => Self::Grass,
            "springer-flag" => Self::SpringerFlag,
            "springer-grass" => Self::SpringerGrass,
            "cotangent" => Self::Cotangent,
            other => return Err(Error::Input(format!("unknown point kind {other:?}"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Point<F: Field> {
    Matrix(Matrix<F>),
    Flag(Flag<F>),
    Grass(Subspace<F>),
    SpringerFlag(SpringerFlagPoint<F>),
    SpringerGrass(SpringerGrassPoint<F>),
    Cotangent(CotangentMatrixPoint<F>),
}

fn schema<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Input(format!("{what}: {e}")))
}

fn build<F: Field>(field: &F, raw: &RawMatrix, path: &str) -> Result<Matrix<F>> {
    if raw.entries.len() != raw.rows {
        return Err(Error::Input(format!(
            "{path}.entries: expected {} rows, found {}",
            raw.rows,
            raw.entries.len()
        )));
    }
    let mut rows = Vec::with_capacity(raw.rows);
    for (i, row) in raw.entries.iter().enumerate() {
        if row.len() != raw.cols {
            return Err(Error::Input(format!(
                "{path}.entries[{i}]: expected {} columns, found {}",
                raw.cols,
                row.len()
            )));
        }
        let mut out = Vec::with_capacity(raw.cols);
        for (j, s) in row.iter().enumerate() {
            let v = match s {
                RawScalar::Int(k) => field.from_i64(*k),
                RawScalar::Text(t) => field
                    .parse(t)
                    .map_err(|e| Error::Input(format!("{path}.entries[{i}][{j}]: {e}")))?,
            };
            out.push(v);
        }
        rows.push(out);
    }
    if raw.rows == 0 {
        return Ok(Matrix::zeros(field, 0, raw.cols));
    }
    Ok(Matrix::from_rows(field, rows)?)
}

fn basis_subspace<F: Field>(m: &Matrix<F>, path: &str) -> Result<Subspace<F>> {
    let v = Subspace::column_span(m);
    if v.dim() != m.cols() {
        return Err(Error::Invariant(format!(
            "{path}: the {} columns span a space of dimension {}",
            m.cols(),
            v.dim()
        )));
    }
    Ok(v)
}

/// Parses JSON text into a typed point.
pub fn parse_point<F: Field>(field: &F, text: &str, kind: PointKind) -> Result<Point<F>> {
    Ok(match kind {
        PointKind::Matrix => Point::Matrix(build(field, &schema(text, "matrix")?, "matrix")?),
        PointKind::Flag => Point::Flag(Flag::new(build(field, &schema(text, "flag")?, "flag")?)?),
        PointKind::Grass => {
            let m = build(field, &schema(text, "grass")?, "basis")?;
            Point::Grass(basis_subspace(&m, "basis")?)
        }
        PointKind::SpringerFlag => {
            let raw: RawSpringerFlag = schema(text, "springer flag")?;
            let flag = Flag::new(build(field, &raw.flag, "flag")?)?;
            Point::SpringerFlag(SpringerFlagPoint::new(flag, build(field, &raw.z, "z")?)?)
        }
        PointKind::SpringerGrass => {
            let raw: RawSpringerGrass = schema(text, "springer grass")?;
            let v = basis_subspace(&build(field, &raw.basis, "basis")?, "basis")?;
            Point::SpringerGrass(SpringerGrassPoint::new(v, build(field, &raw.x, "x")?)?)
        }
        PointKind::Cotangent => {
            let raw: RawCotangent = schema(text, "cotangent")?;
            Point::Cotangent(CotangentMatrixPoint::new(build(field, &raw.x, "x")?, build(field, &raw.y, "y")?)?)
        }
    })
}

pub fn parse_point_file<F: Field>(field: &F, path: &Path, kind: PointKind) -> Result<Point<F>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    parse_point(field, &text, kind)
}

pub fn matrix_to_json<F: Field>(m: &Matrix<F>) -> Value {
    json!({ "rows": m.rows(), "cols": m.cols(), "entries": m.to_string_rows() })
}

/// A subspace as the matrix of its canonical basis columns.
pub fn subspace_to_json<F: Field>(v: &Subspace<F>) -> Value {
    matrix_to_json(&v.basis_columns())
}

impl<F: Field> Point<F> {
    pub fn to_json(&self) -> Value {
        match self {
            Point::Matrix(m) => matrix_to_json(m),
            Point::Flag(f) => matrix_to_json(f.generator()),
            Point::Grass(v) => subspace_to_json(v),
            Point::SpringerFlag(p) => json!({ "flag": matrix_to_json(p.flag.generator()), "z": matrix_to_json(&p.z) }),
            Point::SpringerGrass(p) => json!({ "basis": subspace_to_json(&p.v), "x": matrix_to_json(&p.x) }),
            Point::Cotangent(p) => json!({ "x": matrix_to_json(&p.x), "y": matrix_to_json(&p.y) }),
        }
    }
}
