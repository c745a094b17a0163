use std::fmt::Write as _;

use serde_json::{json, Map, Value};

#[derive(Debug, Clone, PartialEq)]
pub enum ColumnData {
    Numbers(Vec<f64>),
    Integers(Vec<i64>),
    Text(Vec<String>),
}

impl ColumnData {
    fn len(&self) -> usize {
        match self {
            ColumnData::Numbers(v) => v.len(),
            ColumnData::Integers(v) => v.len(),
            ColumnData::Text(v) => v.len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub name: String,
    pub data: ColumnData,
}

/// Header block plus equal-length named columns.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CurveFile {
    header: Vec<(String, String)>,
    columns: Vec<Column>,
}

/// Shortest representation that parses back to the same `f64`.
pub fn num(v: f64) -> String {
    format!("{v:?}")
}

fn quote(arg: &str) -> String {
    let plain = !arg.is_empty()
        && arg
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || "-_.,:=/+".contains(c));
    if plain {
        arg.to_owned()
    } else {
        format!("'{}'", arg.replace('\'', r"'\''"))
    }
}

impl CurveFile {
    pub fn new(command: &str) -> Self {
        let mut f = CurveFile::default();
        f.meta("tool", format!("susyqm {}", env!("CARGO_PKG_VERSION")));
        f.meta("command", command);
        f
    }

    pub fn meta(&mut self, key: &str, value: impl Into<String>) {
        self.header.push((key.to_owned(), value.into()));
    }

    /// Records the argument list that regenerates this file.
    pub fn reproduce(&mut self, args: &[String]) {
        let line: Vec<String> = std::iter::once("susyqm".to_owned())
            .chain(args.iter().map(|a| quote(a)))
            .collect();
        self.meta("reproduce", line.join(" "));
    }

    pub fn numbers(&mut self, name: impl Into<String>, values: Vec<f64>) {
        self.push(name.into(), ColumnData::Numbers(values));
    }

    pub fn integers(&mut self, name: impl Into<String>, values: Vec<i64>) {
        self.push(name.into(), ColumnData::Integers(values));
    }

    pub fn text(&mut self, name: impl Into<String>, values: Vec<String>) {
        self.push(name.into(), ColumnData::Text(values));
    }

    fn push(&mut self, name: String, data: ColumnData) {
        if let Some(first) = self.columns.first() {
            assert_eq!(first.data.len(), data.len(), "column `{name}` length");
        }
        self.columns.push(Column { name, data });
    }

    pub fn rows(&self) -> usize {
        self.columns.first().map_or(0, |c| c.data.len())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.header {
            for line in v.lines() {
                let _ = writeln!(out, "# {k}: {line}");
            }
        }
        let names: Vec<&str> = self.columns.iter().map(|c| c.name.as_str()).collect();
        let _ = writeln!(out, "{}", names.join(","));
        for i in 0..self.rows() {
            let cells: Vec<String> = self
                .columns
                .iter()
                .map(|c| match &c.data {
                    ColumnData::Numbers(v) => num(v[i]),
                    ColumnData::Integers(v) => v[i].to_string(),
                    ColumnData::Text(v) => v[i].clone(),
                })
                .collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut header = Map::new();
        for (k, v) in &self.header {
            header.insert(k.clone(), Value::String(v.clone()));
        }
        let columns: Vec<Value> = self
            .columns
            .iter()
            .map(|c| {
                let values = match &c.data {
                    ColumnData::Numbers(v) => json!(v),
                    ColumnData::Integers(v) => json!(v),
                    ColumnData::Text(v) => json!(v),
                };
                json!({ "name": c.name, "values": values })
            })
            .collect();
        let doc = json!({ "header": header, "columns": columns });
        let mut s = serde_json::to_string_pretty(&doc).expect("finite values serialize");
        s.push('\n');
        s
    }
}
