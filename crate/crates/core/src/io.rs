//! JSON documents for complexes, maps and computed results.
//!
//! A complex document looks like
//!
//! ```json
//! {
//!   "schema_version": "1",
//!   "N": 3,
//!   "field": {"kind": "prime", "characteristic": 2},
//!   "dims": {"0": 1, "1": 1},
//!   "differentials": {"1": [[1]]}
//! }
//! ```
//!
//! Degrees are decimal strings. Matrices are row-major arrays of rows.
//! Prime-field scalars are integers in `[0, p)`; rationals are strings
//! `"a"` or `"a/b"` in lowest terms (plain integers are also accepted).
//! The field may also be given as the shorthand `"Q"` or `"F_p"`.
//!
//! A map document has `source`, `target` (each an inline complex document
//! or `{"file": "path"}`, resolved relative to the map document) and
//! `components`, a degree-to-matrix mapping.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::complex::{ChainMap, NComplex};
use crate::contractible::{DiskDecomposition, Factorization};
use crate::error::{Error, Result};
use crate::homotopy::Homotopy;
use crate::linalg::{FieldKind, FieldSpec, Matrix, Scalar};
use crate::model::ModelFactorization;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDocument {
    pub schema_version: String,
    #[serde(rename = "N")]
    pub order: usize,
    pub field: Value,
    pub dims: IndexMap<String, usize>,
    #[serde(default)]
    pub differentials: IndexMap<String, Vec<Vec<Value>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComplexRef {
    File { file: PathBuf },
    Inline(Box<ComplexDocument>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDocument {
    pub schema_version: String,
    pub source: ComplexRef,
    pub target: ComplexRef,
    #[serde(default)]
    pub components: IndexMap<String, Vec<Vec<Value>>>,
}

fn validation_at(n: i64, msg: impl std::fmt::Display) -> Error {
    Error::Validation(format!("degree {n}: {msg}"))
}

fn parse_degree(key: &str) -> Result<i64> {
    key.trim()
        .parse()
        .ok()
        .filter(|n: &i64| n.to_string() == key)
        .ok_or_else(|| Error::Parse(format!("degree key {key:?} is not a decimal integer")))
}

pub fn field_to_value(field: FieldSpec) -> Value {
    match field.kind() {
        FieldKind::Rationals => json!({"kind": "rationals"}),
        FieldKind::PrimeField => json!({"kind": "prime", "characteristic": field.characteristic()}),
    }
}

pub fn field_from_value(v: &Value) -> Result<FieldSpec> {
    let bad = || Error::Parse(format!("unrecognized field encoding {v}"));
    match v {
        Value::String(s) if s == "Q" => Ok(FieldSpec::rationals()),
        Value::String(s) => {
            let p = s.strip_prefix("F_").and_then(|p| p.parse().ok()).ok_or_else(bad)?;
            FieldSpec::prime(p)
        }
        Value::Object(obj) => match obj.get("kind").and_then(Value::as_str) {
            Some("rationals") if obj.len() == 1 => Ok(FieldSpec::rationals()),
            Some("prime") if obj.len() == 2 => {
                let p = obj.get("characteristic").and_then(Value::as_u64).ok_or_else(bad)?;
                FieldSpec::prime(p)
            }
            _ => Err(bad()),
        },
        _ => Err(bad()),
    }
}

fn scalar_to_value(s: &Scalar) -> Value {
    match s {
        Scalar::Mod(v) => json!(v),
        Scalar::Rat(_) => Value::String(s.to_string()),
    }
}

fn scalar_from_value(field: FieldSpec, v: &Value) -> Result<Scalar> {
    match v {
        Value::Number(n) if n.is_i64() || n.is_u64() => field.parse_scalar(&n.to_string()),
        Value::String(s) if field.kind() == FieldKind::Rationals => field.parse_scalar(s),
        _ => Err(Error::Parse(format!("{v} is not a {field} scalar"))),
    }
}

pub fn matrix_to_value(m: &Matrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(scalar_to_value).collect()))
            .collect(),
    )
}

/// Reads a row-major matrix of the expected shape. `[]` stands for any
/// matrix with zero rows.
fn matrix_from_rows(
    field: FieldSpec,
    rows: &[Vec<Value>],
    shape: (usize, usize),
    n: i64,
    what: &str,
) -> Result<Matrix> {
    let (r, c) = shape;
    if rows.is_empty() && r == 0 {
        return Ok(Matrix::zeros(field, 0, c));
    }
    if rows.len() != r || rows.iter().any(|row| row.len() != c) {
        let got_cols = rows.first().map_or(0, Vec::len);
        return Err(validation_at(
            n,
            format!("{what} should be {r}x{c}, got {}x{got_cols} (or ragged)", rows.len()),
        ));
    }
    let data = rows
        .iter()
        .flatten()
        .map(|v| scalar_from_value(field, v))
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_vec(field, r, c, data)
}

fn matrices_to_map(ms: &BTreeMap<i64, Matrix>) -> IndexMap<String, Vec<Vec<Value>>> {
    ms.iter()
        .map(|(n, m)| {
            let rows = match matrix_to_value(m) {
                Value::Array(rows) => rows
                    .into_iter()
                    .map(|r| match r {
                        Value::Array(r) => r,
                        _ => unreachable!(),
                    })
                    .collect(),
                _ => unreachable!(),
            };
            (n.to_string(), rows)
        })
        .collect()
}

/// Degree-to-matrix mapping, the encoding shared by differentials, map
/// components and homotopy witnesses.
pub fn matrices_to_value(ms: &BTreeMap<i64, Matrix>) -> Value {
    serde_json::to_value(matrices_to_map(ms)).expect("plain JSON")
}

impl ComplexDocument {
    pub fn from_complex(x: &NComplex) -> Self {
        ComplexDocument {
            schema_version: SCHEMA_VERSION.into(),
            order: x.order(),
            field: field_to_value(x.field()),
            dims: x.dims().iter().map(|(n, d)| (n.to_string(), *d)).collect(),
            differentials: matrices_to_map(x.differentials()),
        }
    }

    pub fn to_complex(&self) -> Result<NComplex> {
        check_schema(&self.schema_version)?;
        if self.order < 2 {
            return Err(Error::Validation(format!("N must be at least 2, got {}", self.order)));
        }
        let field = field_from_value(&self.field)?;
        let mut dims = BTreeMap::new();
        for (key, &d) in &self.dims {
            let n = parse_degree(key)?;
            if d == 0 {
                return Err(validation_at(n, "dimensions must be positive; omit zero spaces"));
            }
            if dims.insert(n, d).is_some() {
                return Err(Error::Parse(format!("degree {n} listed twice")));
            }
        }
        let dim = |n: i64| dims.get(&n).copied().unwrap_or(0);
        let mut diffs = BTreeMap::new();
        for (key, rows) in &self.differentials {
            let n = parse_degree(key)?;
            let m = matrix_from_rows(field, rows, (dim(n - 1), dim(n)), n, "differential")?;
            if diffs.insert(n, m).is_some() {
                return Err(Error::Parse(format!("differential {n} listed twice")));
            }
        }
        match NComplex::new(self.order, field, dims, diffs) {
            Ok(x) => Ok(x),
            Err(Error::Shape(msg)) => Err(Error::Validation(msg)),
            Err(e) => Err(e),
        }
    }
}

fn join(degrees: &[i64]) -> String {
    degrees.iter().map(i64::to_string).collect::<Vec<_>>().join(", ")
}

fn check_schema(version: &str) -> Result<()> {
    if version == SCHEMA_VERSION {
        Ok(())
    } else {
        Err(Error::Parse(format!("unsupported schema_version {version:?}")))
    }
}

fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn parse_complex(text: &str) -> Result<NComplex> {
    from_json::<ComplexDocument>(text)?.to_complex()
}

pub fn complex_to_value(x: &NComplex) -> Value {
    serde_json::to_value(ComplexDocument::from_complex(x)).expect("plain JSON")
}

/// Pretty-printed canonical document with a trailing newline.
pub fn serialize_complex(x: &NComplex) -> String {
    to_pretty(&complex_to_value(x))
}

pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain JSON");
    s.push('\n');
    s
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn load_complex(path: &Path) -> Result<NComplex> {
    parse_complex(&read(path)?)
}

impl ComplexRef {
    fn resolve(&self, base: Option<&Path>) -> Result<NComplex> {
        match self {
            ComplexRef::Inline(doc) => doc.to_complex(),
            ComplexRef::File { file } => {
                let path = match base {
                    Some(dir) if file.is_relative() => dir.join(file),
                    _ => file.clone(),
                };
                load_complex(&path)
            }
        }
    }
}

impl MapDocument {
    pub fn from_map(f: &ChainMap) -> Self {
        MapDocument {
            schema_version: SCHEMA_VERSION.into(),
            source: ComplexRef::Inline(Box::new(ComplexDocument::from_complex(f.source()))),
            target: ComplexRef::Inline(Box::new(ComplexDocument::from_complex(f.target()))),
            components: matrices_to_map(f.components()),
        }
    }

    /// `base` is the directory against which relative file references are
    /// resolved.
    pub fn to_map(&self, base: Option<&Path>) -> Result<ChainMap> {
        check_schema(&self.schema_version)?;
        let x = self.source.resolve(base)?;
        let y = self.target.resolve(base)?;
        if x.order() != y.order() || x.field() != y.field() {
            return Err(Error::Validation("source and target differ in N or field".into()));
        }
        let field = x.field();
        let mut comps = BTreeMap::new();
        for (key, rows) in &self.components {
            let n = parse_degree(key)?;
            let m = matrix_from_rows(field, rows, (y.dim(n), x.dim(n)), n, "component")?;
            comps.insert(n, m);
        }
        match ChainMap::new(x, y, comps) {
            Ok(f) => Ok(f),
            Err(Error::NotAChainMap(bad)) => Err(Error::Validation(format!(
                "components do not commute with the differentials at degree {}",
                join(&bad)
            ))),
            Err(Error::Shape(msg)) => Err(Error::Validation(msg)),
            Err(e) => Err(e),
        }
    }
}

pub fn parse_map(text: &str, base: Option<&Path>) -> Result<ChainMap> {
    from_json::<MapDocument>(text)?.to_map(base)
}

pub fn load_map(path: &Path) -> Result<ChainMap> {
    parse_map(&read(path)?, path.parent())
}

pub fn map_to_value(f: &ChainMap) -> Value {
    serde_json::to_value(MapDocument::from_map(f)).expect("plain JSON")
}

pub fn serialize_map(f: &ChainMap) -> String {
    to_pretty(&map_to_value(f))
}

/// Components `s_n : X_n -> Y_{n+N-1}` keyed by `n`.
pub fn homotopy_to_value(s: &Homotopy) -> Value {
    matrices_to_value(s.components())
}

fn dims_to_value(dims: &BTreeMap<i64, usize>) -> Value {
    Value::Object(dims.iter().map(|(n, d)| (n.to_string(), json!(d))).collect())
}

pub fn decomposition_to_value(dec: &DiskDecomposition) -> Value {
    json!({
        "summand_dims": dims_to_value(dec.summand_dims()),
        "disks": complex_to_value(dec.disks.complex()),
        "iso_to_disks": map_to_value(&dec.iso_to_disks),
        "iso_from_disks": map_to_value(&dec.iso_from_disks),
    })
}

pub fn factorization_to_value(fac: &Factorization) -> Value {
    json!({
        "summand_dims": dims_to_value(fac.contractible.summands()),
        "beta": map_to_value(&fac.beta),
        "p": map_to_value(&fac.p),
    })
}

pub fn model_factorization_to_value(fac: &ModelFactorization) -> Value {
    json!({
        "middle": complex_to_value(&fac.middle),
        "i": map_to_value(&fac.i),
        "p": map_to_value(&fac.p),
    })
}

/// `[{degree, amplitude, dim}, ...]` in ascending order.
pub fn homology_table_to_value(table: &BTreeMap<(i64, usize), usize>) -> Value {
    Value::Array(
        table
            .iter()
            .map(|(&(n, t), &d)| json!({"degree": n, "amplitude": t, "dim": d}))
            .collect(),
    )
}

/// Degree × amplitude grid of homology dimensions, right-aligned.
pub fn homology_table_text(table: &BTreeMap<(i64, usize), usize>) -> String {
    let mut degrees: Vec<i64> = table.keys().map(|k| k.0).collect();
    degrees.dedup();
    let mut amps: Vec<usize> = table.keys().map(|k| k.1).collect();
    amps.sort_unstable();
    amps.dedup();
    let mut rows = vec![std::iter::once("n".to_string())
        .chain(amps.iter().map(|t| format!("t={t}")))
        .collect::<Vec<_>>()];
    for &n in &degrees {
        let mut row = vec![n.to_string()];
        for &t in &amps {
            row.push(table.get(&(n, t)).map_or(String::new(), usize::to_string));
        }
        rows.push(row);
    }
    let widths: Vec<usize> = (0..rows[0].len())
        .map(|j| rows.iter().map(|r| r[j].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row.iter().zip(&widths).map(|(c, &w)| format!("{c:>w$}")).collect();
        out.push_str(&cells.join("  "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::disk;

    #[test]
    fn disk_round_trip() {
        let f2 = FieldSpec::prime(2).unwrap();
        let x = disk(3, 0, 1, f2).unwrap();
        let text = serialize_complex(&x);
        assert_eq!(parse_complex(&text).unwrap(), x);
        assert_eq!(serialize_complex(&parse_complex(&text).unwrap()), text);
    }

    #[test]
    fn rational_round_trip() {
        let q = FieldSpec::rationals();
        let d = Matrix::from_vec(q, 1, 2, vec![q.ratio(-1, 2), q.from_i64(3)]).unwrap();
        let x = NComplex::new(2, q, BTreeMap::from([(0, 1), (1, 2)]), BTreeMap::from([(1, d)])).unwrap();
        let text = serialize_complex(&x);
        assert!(text.contains("\"-1/2\""));
        assert_eq!(parse_complex(&text).unwrap(), x);
    }

    #[test]
    fn identity_string_of_length_four() {
        let text = r#"{"schema_version": "1", "N": 3, "field": "F_2",
            "dims": {"0": 1, "1": 1, "2": 1, "3": 1},
            "differentials": {"1": [[1]], "2": [[1]], "3": [[1]]}}"#;
        match parse_complex(text) {
            Err(Error::NotAnNComplex(bad)) => assert_eq!(bad, vec![3]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn non_canonical_rational() {
        let text = r#"{"schema_version": "1", "N": 2, "field": "Q",
            "dims": {"0": 1, "1": 1}, "differentials": {"1": [["2/4"]]}}"#;
        assert!(matches!(parse_complex(text), Err(Error::Parse(_))));
    }

    #[test]
    fn scalar_outside_field() {
        let text = r#"{"schema_version": "1", "N": 2, "field": "F_5",
            "dims": {"0": 1, "1": 1}, "differentials": {"1": [[7]]}}"#;
        assert!(matches!(parse_complex(text), Err(Error::Field(_))));
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(parse_complex("{"), Err(Error::Parse(_))));
        let bad_key = r#"{"schema_version": "1", "N": 2, "field": "Q", "dims": {"x": 1}}"#;
        assert!(matches!(parse_complex(bad_key), Err(Error::Parse(_))));
        let ragged = r#"{"schema_version": "1", "N": 2, "field": "Q",
            "dims": {"0": 2, "1": 1}, "differentials": {"1": [["1"]]}}"#;
        match parse_complex(ragged) {
            Err(Error::Validation(msg)) => assert!(msg.starts_with("degree 1"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn map_round_trip_and_file_refs() {
        let q = FieldSpec::rationals();
        let x = disk(2, 1, 1, q).unwrap();
        let f = ChainMap::identity(&x).scale(&q.ratio(2, 3));
        assert_eq!(parse_map(&serialize_map(&f), None).unwrap(), f);

        let dir = std::env::temp_dir().join(format!("ncomplex-io-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        fs::write(dir.join("x.json"), serialize_complex(&x)).unwrap();
        let doc = json!({
            "schema_version": "1",
            "source": {"file": "x.json"},
            "target": {"file": "x.json"},
            "components": {"0": [["2/3"]], "1": [["2/3"]]},
        });
        fs::write(dir.join("f.json"), doc.to_string()).unwrap();
        assert_eq!(load_map(&dir.join("f.json")).unwrap(), f);
        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn non_commuting_map() {
        let q = FieldSpec::rationals();
        let x = disk(2, 1, 1, q).unwrap();
        let doc = json!({
            "schema_version": "1",
            "source": ComplexDocument::from_complex(&x),
            "target": ComplexDocument::from_complex(&x),
            "components": {"1": [["1"]]},
        });
        match parse_map(&doc.to_string(), None) {
            Err(Error::Validation(msg)) => assert!(msg.contains("degree 1"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn table_text_is_aligned() {
        let table = BTreeMap::from([((-1, 1), 0), ((-1, 2), 10), ((0, 1), 1), ((0, 2), 1)]);
        let text = homology_table_text(&table);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines.iter().all(|l| l.len() == lines[0].len()));
    }
}
