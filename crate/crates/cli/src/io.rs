use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use rsq_core::quiver::{Quiver, QuiverSpec};
use serde_json::Value;

/// Marks errors caused by unreadable or malformed input files.
#[derive(Debug)]
pub struct Malformed(pub String);

impl fmt::Display for Malformed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Malformed {}

pub fn malformed(path: &Path, what: impl fmt::Display) -> anyhow::Error {
    Malformed(format!("{}: {what}", path.display())).into()
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).map_err(|e| malformed(path, e))?;
    serde_json::from_str(&text).map_err(|e| malformed(path, e))
}

pub fn read_quiver(path: &Path) -> Result<Quiver> {
    let v = read_json(path)?;
    let spec: QuiverSpec = serde_json::from_value(v).map_err(|e| malformed(path, e))?;
    Quiver::from_spec(&spec).map_err(|e| malformed(path, e))
}

/// Rebuilds the smallest quiver a complex file can live over: every named vertex, and each
/// arrow block `tgt <- src` via `alpha` read as `alpha: tgt -> src`.
pub fn infer_quiver(path: &Path, v: &Value) -> Result<Quiver> {
    let mut vertices = BTreeSet::new();
    let mut arrows: BTreeMap<String, (String, String)> = BTreeMap::new();
    let name = |x: &Value, key: &str| -> Result<String> {
        x.get(key)
            .and_then(Value::as_str)
            .map(str::to_string)
            .ok_or_else(|| malformed(path, format!("entry lacks a string `{key}`")))
    };
    if let Some(terms) = v.get("terms").and_then(Value::as_object) {
        for list in terms.values() {
            for item in list.as_array().into_iter().flatten() {
                vertices.insert(name(item, "vertex")?);
            }
        }
    }
    if let Some(diff) = v.get("diff").and_then(Value::as_object) {
        for list in diff.values() {
            for blk in list.as_array().into_iter().flatten() {
                let (y, x) = (name(blk, "tgt")?, name(blk, "src")?);
                vertices.insert(y.clone());
                vertices.insert(x.clone());
                if let Some(a) = blk.get("arrow").and_then(Value::as_str) {
                    let ends = (y, x);
                    match arrows.get(a) {
                        Some(prev) if *prev != ends => {
                            return Err(malformed(path, format!("arrow `{a}` is used with two different end points")))
                        }
                        _ => {
                            arrows.insert(a.to_string(), ends);
                        }
                    }
                }
            }
        }
    }
    if vertices.is_empty() {
        return Err(malformed(path, "complex names no vertices; pass --quiver"));
    }
    Quiver::new(
        vertices.into_iter().collect(),
        arrows.into_iter().map(|(a, (s, t))| (a, s, t)).collect(),
    )
    .map_err(|e| malformed(path, e))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}
