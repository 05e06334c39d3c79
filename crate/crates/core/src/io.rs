//! JSON files shared by the command-line tools.
//!
//! * coloring: `{"n": 4, "colors": [..]}` with `C(n,2)` integer labels in
//!   row-major upper-triangle order `(0,1), (0,2), .., (n-2,n-1)`;
//! * integer set: a strictly increasing array of integers;
//! * point set: an array of distinct `[x, y]` integer pairs;
//! * set system: `{"n": 6, "sets": [[0,1,2], ..], "d": 2}` over `{0..n-1}`.
//!
//! Unknown object fields are ignored, so a coloring written with a
//! `schema_version` field loads back unchanged.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::coloring::ColoredCompleteGraph;
use crate::error::Result;
use crate::forbidden::SetSystemInstance;
use crate::number_sets::{IntegerSet, PointSet};

/// Version of the file and payload layouts.
pub const SCHEMA_VERSION: u32 = 1;

/// Crate version reported in payloads.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

/// Pretty JSON with a trailing newline.
pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<()> {
    fs::write(path, to_json_string(value)?)?;
    Ok(())
}

pub fn load_coloring(path: &Path) -> Result<ColoredCompleteGraph> {
    let g: ColoredCompleteGraph = read_json(path)?;
    Ok(g)
}

pub fn load_integer_set(path: &Path) -> Result<IntegerSet> {
    read_json(path)
}

pub fn load_point_set(path: &Path) -> Result<PointSet> {
    read_json(path)
}

pub fn load_set_system(path: &Path) -> Result<SetSystemInstance> {
    let inst: SetSystemInstance = read_json(path)?;
    inst.validate()?;
    Ok(inst)
}

/// A coloring object tagged with the schema version.
pub fn coloring_document(g: &ColoredCompleteGraph) -> Result<Value> {
    let mut doc = Map::new();
    doc.insert("schema_version".into(), SCHEMA_VERSION.into());
    if let Value::Object(fields) = serde_json::to_value(g)? {
        doc.extend(fields);
    }
    Ok(Value::Object(doc))
}

pub fn save_coloring(path: &Path, g: &ColoredCompleteGraph) -> Result<()> {
    write_json(path, &coloring_document(g)?)
}

/// Wraps a result as `{schema_version, version, command, ..}`. Object
/// results are merged in; anything else goes under `result`.
pub fn envelope<T: Serialize>(command: &str, result: &T) -> Result<Value> {
    let mut doc = Map::new();
    doc.insert("schema_version".into(), SCHEMA_VERSION.into());
    doc.insert("version".into(), VERSION.into());
    doc.insert("command".into(), command.into());
    match serde_json::to_value(result)? {
        Value::Object(fields) => doc.extend(fields),
        other => {
            doc.insert("result".into(), other);
        }
    }
    Ok(Value::Object(doc))
}
