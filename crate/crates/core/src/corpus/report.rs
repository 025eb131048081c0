//! Structured analysis report with deterministic JSON serialization.
//!
//! Key order is insertion order throughout; floats are written with 17
//! significant digits (`{:.16e}`), which round-trips every `f64` exactly.
//! Top-level keys always appear as `tool`, `inputs`, `params`, `scalars`,
//! `tables`.

use std::fmt::Write as _;
use std::path::Path;

use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn from_bytes(path: impl Into<String>, bytes: &[u8]) -> Self {
        Self {
            path: path.into(),
            sha256: hex::encode(Sha256::digest(bytes)),
        }
    }

    pub fn of_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
        Ok(Self::from_bytes(path.display().to_string(), &bytes))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ParamValue {
    Bool(bool),
    Int(i128),
    Num(f64),
    Text(String),
}

impl From<bool> for ParamValue {
    fn from(v: bool) -> Self {
        ParamValue::Bool(v)
    }
}
impl From<u64> for ParamValue {
    fn from(v: u64) -> Self {
        ParamValue::Int(v.into())
    }
}
impl From<usize> for ParamValue {
    fn from(v: usize) -> Self {
        ParamValue::Int(v as i128)
    }
}
impl From<f64> for ParamValue {
    fn from(v: f64) -> Self {
        ParamValue::Num(v)
    }
}
impl From<&str> for ParamValue {
    fn from(v: &str) -> Self {
        ParamValue::Text(v.to_owned())
    }
}
impl From<String> for ParamValue {
    fn from(v: String) -> Self {
        ParamValue::Text(v)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i128),
    Num(f64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}
impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i128)
    }
}
impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_owned())
    }
}
impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

/// Column-labeled table.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<Cell>) -> Result<()> {
        if row.len() != self.columns.len() {
            return Err(Error::Validation(format!(
                "table row has {} cells for {} columns",
                row.len(),
                self.columns.len()
            )));
        }
        if row
            .iter()
            .any(|c| matches!(c, Cell::Num(v) if !v.is_finite()))
        {
            return Err(Error::Validation("table cell is not finite".into()));
        }
        self.rows.push(row);
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct AnalysisReport {
    pub tool: String,
    pub inputs: Vec<InputDigest>,
    pub params: Vec<(String, ParamValue)>,
    pub scalars: Vec<(String, f64)>,
    pub tables: Vec<(String, Table)>,
}

impl AnalysisReport {
    pub fn new(tool: impl Into<String>) -> Self {
        Self {
            tool: tool.into(),
            ..Self::default()
        }
    }

    pub fn input(&mut self, digest: InputDigest) -> &mut Self {
        self.inputs.push(digest);
        self
    }

    pub fn param(&mut self, name: impl Into<String>, value: impl Into<ParamValue>) -> &mut Self {
        self.params.push((name.into(), value.into()));
        self
    }

    pub fn scalar(&mut self, name: impl Into<String>, value: f64) -> Result<&mut Self> {
        let name = name.into();
        if !value.is_finite() {
            return Err(Error::Validation(format!("scalar `{name}` is not finite")));
        }
        self.scalars.push((name, value));
        Ok(self)
    }

    pub fn table(&mut self, name: impl Into<String>, table: Table) -> &mut Self {
        self.tables.push((name.into(), table));
        self
    }

    pub fn get_scalar(&self, name: &str) -> Option<f64> {
        self.scalars
            .iter()
            .find(|(k, _)| k == name)
            .map(|&(_, v)| v)
    }

    pub fn get_table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|(k, _)| k == name).map(|(_, t)| t)
    }

    pub fn get_param(&self, name: &str) -> Option<&ParamValue> {
        self.params.iter().find(|(k, _)| k == name).map(|(_, v)| v)
    }

    pub fn to_json(&self) -> String {
        let mut out = String::new();
        out.push_str("{\n  \"tool\": ");
        push_str(&mut out, &self.tool);
        out.push_str(",\n  \"inputs\": [");
        for (i, d) in self.inputs.iter().enumerate() {
            out.push_str(if i == 0 { "\n    " } else { ",\n    " });
            out.push_str("{\"path\": ");
            push_str(&mut out, &d.path);
            out.push_str(", \"sha256\": ");
            push_str(&mut out, &d.sha256);
            out.push('}');
        }
        out.push_str(if self.inputs.is_empty() { "]" } else { "\n  ]" });

        out.push_str(",\n  \"params\": {");
        for (i, (k, v)) in self.params.iter().enumerate() {
            out.push_str(if i == 0 { "\n    " } else { ",\n    " });
            push_str(&mut out, k);
            out.push_str(": ");
            match v {
                ParamValue::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
                ParamValue::Int(n) => {
                    let _ = write!(out, "{n}");
                }
                ParamValue::Num(x) => push_float(&mut out, *x),
                ParamValue::Text(s) => push_str(&mut out, s),
            }
        }
        out.push_str(if self.params.is_empty() { "}" } else { "\n  }" });

        out.push_str(",\n  \"scalars\": {");
        for (i, (k, v)) in self.scalars.iter().enumerate() {
            out.push_str(if i == 0 { "\n    " } else { ",\n    " });
            push_str(&mut out, k);
            out.push_str(": ");
            push_float(&mut out, *v);
        }
        out.push_str(if self.scalars.is_empty() {
            "}"
        } else {
            "\n  }"
        });

        out.push_str(",\n  \"tables\": {");
        for (i, (name, table)) in self.tables.iter().enumerate() {
            out.push_str(if i == 0 { "\n    " } else { ",\n    " });
            push_str(&mut out, name);
            out.push_str(": {\n      \"columns\": [");
            for (j, c) in table.columns.iter().enumerate() {
                if j > 0 {
                    out.push_str(", ");
                }
                push_str(&mut out, c);
            }
            out.push_str("],\n      \"rows\": [");
            for (r, row) in table.rows.iter().enumerate() {
                out.push_str(if r == 0 {
                    "\n        ["
                } else {
                    ",\n        ["
                });
                for (j, cell) in row.iter().enumerate() {
                    if j > 0 {
                        out.push_str(", ");
                    }
                    match cell {
                        Cell::Int(n) => {
                            let _ = write!(out, "{n}");
                        }
                        Cell::Num(x) => push_float(&mut out, *x),
                        Cell::Text(s) => push_str(&mut out, s),
                    }
                }
                out.push(']');
            }
            out.push_str(if table.rows.is_empty() {
                "]"
            } else {
                "\n      ]"
            });
            out.push_str("\n    }");
        }
        out.push_str(if self.tables.is_empty() { "}" } else { "\n  }" });
        out.push_str("\n}\n");
        out
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let bad = |what: &str| Error::Validation(format!("malformed report: {what}"));
        let root: Value = serde_json::from_str(text)
            .map_err(|e| Error::Validation(format!("malformed report: {e}")))?;
        let obj = root
            .as_object()
            .ok_or_else(|| bad("root is not an object"))?;
        let mut report = Self::new(
            obj.get("tool")
                .and_then(Value::as_str)
                .ok_or_else(|| bad("tool"))?,
        );
        for d in obj
            .get("inputs")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("inputs"))?
        {
            let path = d
                .get("path")
                .and_then(Value::as_str)
                .ok_or_else(|| bad("input path"))?;
            let sha = d
                .get("sha256")
                .and_then(Value::as_str)
                .ok_or_else(|| bad("input sha256"))?;
            report.inputs.push(InputDigest {
                path: path.into(),
                sha256: sha.into(),
            });
        }
        for (k, v) in obj
            .get("params")
            .and_then(Value::as_object)
            .ok_or_else(|| bad("params"))?
        {
            let value = match v {
                Value::Bool(b) => ParamValue::Bool(*b),
                Value::String(s) => ParamValue::Text(s.clone()),
                Value::Number(_) => match integer(v) {
                    Some(n) => ParamValue::Int(n),
                    None => ParamValue::Num(v.as_f64().ok_or_else(|| bad("param"))?),
                },
                _ => return Err(bad("param value")),
            };
            report.params.push((k.clone(), value));
        }
        for (k, v) in obj
            .get("scalars")
            .and_then(Value::as_object)
            .ok_or_else(|| bad("scalars"))?
        {
            report.scalar(k.clone(), v.as_f64().ok_or_else(|| bad("scalar"))?)?;
        }
        for (name, t) in obj
            .get("tables")
            .and_then(Value::as_object)
            .ok_or_else(|| bad("tables"))?
        {
            let columns = t
                .get("columns")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("columns"))?
                .iter()
                .map(|c| c.as_str().map(str::to_owned).ok_or_else(|| bad("column")))
                .collect::<Result<Vec<_>>>()?;
            let mut table = Table::new(columns);
            for row in t
                .get("rows")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("rows"))?
            {
                let cells = row
                    .as_array()
                    .ok_or_else(|| bad("row"))?
                    .iter()
                    .map(|c| match c {
                        Value::String(s) => Ok(Cell::Text(s.clone())),
                        Value::Number(_) => Ok(match integer(c) {
                            Some(n) => Cell::Int(n),
                            None => Cell::Num(c.as_f64().ok_or_else(|| bad("cell"))?),
                        }),
                        _ => Err(bad("cell")),
                    })
                    .collect::<Result<Vec<_>>>()?;
                table.push_row(cells)?;
            }
            report.table(name.clone(), table);
        }
        Ok(report)
    }
}

fn integer(v: &Value) -> Option<i128> {
    v.as_i64()
        .map(i128::from)
        .or_else(|| v.as_u64().map(i128::from))
}

fn push_str(out: &mut String, s: &str) {
    out.push_str(&serde_json::to_string(s).expect("string serialization is infallible"));
}

fn push_float(out: &mut String, x: f64) {
    let _ = write!(out, "{x:.16e}");
}
