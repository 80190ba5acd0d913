//! Shared helpers: running the binary and validating emitted JSON
//! against the committed schemas.
//!
//! The validator covers the subset of JSON Schema the committed files
//! use: `type`, `required`, `properties`, `additionalProperties`,
//! `items`, `enum`, `anyOf`, `minimum`, and sibling-file `$ref`.

use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

pub fn bbd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bbd"))
        .args(args)
        .output()
        .expect("binary runs")
}

pub fn bbd_stdin(args: &[&str], input: &str) -> Output {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_bbd"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary starts");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().expect("binary runs")
}

pub fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

pub fn stderr_str(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is UTF-8")
}

pub fn json_doc(out: &Output) -> Value {
    serde_json::from_str(stdout_str(out).trim_end()).expect("stdout is one JSON document")
}

fn schema_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas")
}

fn load_schema(dir: &Path, name: &str) -> Value {
    let text = std::fs::read_to_string(dir.join(name))
        .unwrap_or_else(|e| panic!("schema {name}: {e}"));
    serde_json::from_str(&text).unwrap_or_else(|e| panic!("schema {name}: {e}"))
}

/// Panics with a path-annotated message when `value` does not match the
/// named committed schema.
pub fn assert_valid(schema_name: &str, value: &Value) {
    let dir = schema_dir();
    let schema = load_schema(&dir, schema_name);
    if let Err(e) = validate(&dir, &schema, value) {
        panic!("{schema_name}: {e}\nvalue: {value}");
    }
}

fn validate(dir: &Path, schema: &Value, value: &Value) -> Result<(), String> {
    let schema = schema.as_object().ok_or("schema node must be an object")?;

    if let Some(name) = schema.get("$ref").and_then(Value::as_str) {
        return validate(dir, &load_schema(dir, name), value);
    }
    if let Some(branches) = schema.get("anyOf").and_then(Value::as_array) {
        if branches.iter().any(|b| validate(dir, b, value).is_ok()) {
            return Ok(());
        }
        return Err(format!("no anyOf branch matched {value}"));
    }
    if let Some(allowed) = schema.get("enum").and_then(Value::as_array) {
        if !allowed.contains(value) {
            return Err(format!("{value} not one of {allowed:?}"));
        }
    }
    if let Some(ty) = schema.get("type").and_then(Value::as_str) {
        let ok = match ty {
            "object" => value.is_object(),
            "array" => value.is_array(),
            "string" => value.is_string(),
            "integer" => value.is_i64() || value.is_u64(),
            "number" => value.is_number(),
            "boolean" => value.is_boolean(),
            "null" => value.is_null(),
            other => return Err(format!("unsupported schema type {other:?}")),
        };
        if !ok {
            return Err(format!("expected {ty}, got {value}"));
        }
    }
    if let (Some(min), Some(v)) =
        (schema.get("minimum").and_then(Value::as_i64), value.as_i64())
    {
        if v < min {
            return Err(format!("{v} below minimum {min}"));
        }
    }

    if let Some(map) = value.as_object() {
        let properties = schema.get("properties").and_then(Value::as_object);
        let additional = schema.get("additionalProperties");
        for (key, item) in map {
            match properties.and_then(|p| p.get(key)) {
                Some(sub) => validate(dir, sub, item).map_err(|e| format!("{key}: {e}"))?,
                None => match additional {
                    Some(Value::Bool(false)) => return Err(format!("unexpected key {key:?}")),
                    Some(Value::Bool(true)) | None => {}
                    Some(sub) => validate(dir, sub, item).map_err(|e| format!("{key}: {e}"))?,
                },
            }
        }
        if let Some(required) = schema.get("required").and_then(Value::as_array) {
            for key in required.iter().filter_map(Value::as_str) {
                if !map.contains_key(key) {
                    return Err(format!("missing required key {key:?}"));
                }
            }
        }
    }
    if let (Some(items), Some(elements)) = (schema.get("items"), value.as_array()) {
        for (i, item) in elements.iter().enumerate() {
            validate(dir, items, item).map_err(|e| format!("[{i}]: {e}"))?;
        }
    }
    Ok(())
}
