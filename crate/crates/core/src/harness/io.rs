//! Matrix files: a JSON object mapping names to
//! `{"rows": r, "cols": c, "entries": [[re, im], ...]}` with row-major entries.

use std::fs;
use std::path::Path;

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64};

/// Matrices in file order.
pub type NamedMatrices = Vec<(String, ComplexMatrix)>;

fn key_error(key: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        key: Some(key.to_string()),
        message: message.into(),
        line: None,
        column: None,
    }
}

fn dimension(obj: &Map<String, Value>, key: &str, field: &str) -> Result<usize> {
    let v = obj
        .get(field)
        .ok_or_else(|| key_error(key, format!("missing field `{field}`")))?;
    v.as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| key_error(key, format!("`{field}` must be a non-negative integer, got {v}")))
}

fn parse_entry(key: &str, index: usize, v: &Value) -> Result<C64> {
    let bad = || key_error(key, format!("entry {index}: expected a [re, im] pair, got {v}"));
    let pair = v.as_array().ok_or_else(bad)?;
    if pair.len() != 2 {
        return Err(bad());
    }
    let re = pair[0].as_f64().ok_or_else(bad)?;
    let im = pair[1].as_f64().ok_or_else(bad)?;
    Ok(C64::new(re, im))
}

fn parse_matrix(key: &str, v: &Value) -> Result<ComplexMatrix> {
    let obj = v
        .as_object()
        .ok_or_else(|| key_error(key, "expected an object with rows, cols and entries"))?;
    let rows = dimension(obj, key, "rows")?;
    let cols = dimension(obj, key, "cols")?;
    let entries = obj
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| key_error(key, "missing or non-array field `entries`"))?;
    let data = entries
        .iter()
        .enumerate()
        .map(|(i, e)| parse_entry(key, i, e))
        .collect::<Result<Vec<_>>>()?;
    ComplexMatrix::new(rows, cols, data).map_err(|e| key_error(key, e.to_string()))
}

/// Parses the text of a matrix file.
pub fn parse_matrices(text: &str) -> Result<NamedMatrices> {
    let root: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
        key: None,
        message: e.to_string(),
        line: Some(e.line()),
        column: Some(e.column()),
    })?;
    let obj = root.as_object().ok_or_else(|| Error::Parse {
        key: None,
        message: "top level must be an object mapping names to matrices".into(),
        line: None,
        column: None,
    })?;
    obj.iter().map(|(k, v)| Ok((k.clone(), parse_matrix(k, v)?))).collect()
}

pub fn load_matrices(path: impl AsRef<Path>) -> Result<NamedMatrices> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_matrices(&text)
}

/// Serializes matrices; floats are written in shortest round-trip form so
/// that loading the output reproduces every entry bit for bit.
pub fn matrices_to_json(matrices: &[(String, ComplexMatrix)]) -> String {
    let mut root = Map::new();
    for (name, m) in matrices {
        let entries: Vec<Value> = m.entries().iter().map(|z| Value::from(vec![z.re, z.im])).collect();
        let mut obj = Map::new();
        obj.insert("rows".into(), m.rows().into());
        obj.insert("cols".into(), m.cols().into());
        obj.insert("entries".into(), entries.into());
        root.insert(name.clone(), obj.into());
    }
    let mut text = serde_json::to_string_pretty(&Value::Object(root)).expect("finite floats serialize");
    text.push('\n');
    text
}

pub fn save_matrices(path: impl AsRef<Path>, matrices: &[(String, ComplexMatrix)]) -> Result<()> {
    write_text(path, &matrices_to_json(matrices))
}

pub(crate) fn write_text(path: impl AsRef<Path>, text: &str) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, text).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// Looks up matrices by name, in the order requested.
pub fn select<'a>(matrices: &'a [(String, ComplexMatrix)], names: &[String]) -> Result<Vec<ComplexMatrix>> {
    names
        .iter()
        .map(|n| {
            matrices
                .iter()
                .find(|(k, _)| k == n)
                .map(|(_, m): &'a (String, ComplexMatrix)| m.clone())
                .ok_or_else(|| Error::InvalidArgument(format!("no matrix named `{n}`")))
        })
        .collect()
}
