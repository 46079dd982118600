//! Tabular output documents and their CSV and JSON renderings.
//!
//! Both renderings carry the same values. Floats use the shortest decimal
//! that round-trips; non-finite floats become the strings `inf`, `-inf`
//! and `nan`. Exact rationals are always strings such as `"-1/2"`.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::Context;
use num_rational::BigRational;
use serde_json::{Map, Number, Value as Json};

use crate::args::Format;

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Int(i64),
    Float(f64),
    Rational(BigRational),
    Text(String),
    Bool(bool),
    /// Spread over consecutive cells in CSV, an array in JSON.
    List(Vec<Value>),
}

impl From<i64> for Value {
    fn from(v: i64) -> Self {
        Value::Int(v)
    }
}

impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Value::Int(v as i64)
    }
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Float(v)
    }
}

impl From<BigRational> for Value {
    fn from(v: BigRational) -> Self {
        Value::Rational(v)
    }
}

impl From<&BigRational> for Value {
    fn from(v: &BigRational) -> Self {
        Value::Rational(v.clone())
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Text(v.to_string())
    }
}

impl From<String> for Value {
    fn from(v: String) -> Self {
        Value::Text(v)
    }
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::Bool(v)
    }
}

fn float_text(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        // serde_json formats with ryu, the shortest round-trip form
        Number::from_f64(x).expect("finite").to_string()
    }
}

impl Value {
    fn to_json(&self) -> Json {
        match self {
            Value::Int(i) => Json::from(*i),
            Value::Float(x) => match Number::from_f64(*x) {
                Some(n) => Json::Number(n),
                None => Json::String(float_text(*x)),
            },
            Value::Rational(r) => Json::String(r.to_string()),
            Value::Text(s) => Json::String(s.clone()),
            Value::Bool(b) => Json::Bool(*b),
            Value::List(v) => Json::Array(v.iter().map(Value::to_json).collect()),
        }
    }

    fn push_csv_cells(&self, out: &mut Vec<String>) {
        match self {
            Value::Int(i) => out.push(i.to_string()),
            Value::Float(x) => out.push(float_text(*x)),
            Value::Rational(r) => out.push(r.to_string()),
            Value::Text(s) => out.push(csv_quote(s)),
            Value::Bool(b) => out.push(b.to_string()),
            Value::List(v) => v.iter().for_each(|x| x.push_csv_cells(out)),
        }
    }

    fn csv_text(&self) -> String {
        let mut cells = Vec::new();
        self.push_csv_cells(&mut cells);
        cells.join(",")
    }
}

fn csv_quote(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Table {
            name: name.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Position of `column`.
    pub fn column(&self, column: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == column)
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Document {
    pub meta: Vec<(String, Value)>,
    pub tables: Vec<Table>,
}

impl Document {
    pub fn meta(&mut self, key: &str, v: impl Into<Value>) {
        self.meta.push((key.into(), v.into()));
    }

    pub fn get_meta(&self, key: &str) -> Option<&Value> {
        self.meta.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.name == name)
    }

    /// `# key: value` lines, then for each table a `# table: name` line,
    /// a header and the rows.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        for (k, v) in &self.meta {
            let _ = writeln!(s, "# {k}: {}", v.csv_text());
        }
        for t in &self.tables {
            let _ = writeln!(s, "# table: {}", t.name);
            let _ = writeln!(s, "{}", t.columns.join(","));
            for row in &t.rows {
                let mut cells = Vec::new();
                row.iter().for_each(|v| v.push_csv_cells(&mut cells));
                let _ = writeln!(s, "{}", cells.join(","));
            }
        }
        s
    }

    /// `{"meta": {...}, "data": {table: [row objects]}}`.
    pub fn to_json(&self) -> Json {
        let meta: Map<String, Json> = self.meta.iter().map(|(k, v)| (k.clone(), v.to_json())).collect();
        let data: Map<String, Json> = self
            .tables
            .iter()
            .map(|t| {
                let rows = t
                    .rows
                    .iter()
                    .map(|r| {
                        let obj: Map<String, Json> =
                            t.columns.iter().cloned().zip(r.iter().map(Value::to_json)).collect();
                        Json::Object(obj)
                    })
                    .collect();
                (t.name.clone(), Json::Array(rows))
            })
            .collect();
        let mut top = Map::new();
        top.insert("meta".into(), Json::Object(meta));
        top.insert("data".into(), Json::Object(data));
        Json::Object(top)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
                s.push('\n');
                s
            }
        }
    }

    pub fn write(&self, path: &Path, format: Format) -> anyhow::Result<()> {
        fs::write(path, self.render(format)).with_context(|| format!("writing {}", path.display()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use zerodist_core::util::rat;

    fn sample() -> Document {
        let mut d = Document::default();
        d.meta("family", "bell");
        d.meta("sigma", rat(1, 2));
        let mut t = Table::new("rows", &["k", "x", "c"]);
        t.push(vec![1usize.into(), 0.1.into(), Value::List(vec![rat(-1, 2).into(), rat(3, 1).into()])]);
        t.push(vec![2usize.into(), f64::NEG_INFINITY.into(), Value::List(vec![])]);
        d.tables.push(t);
        d
    }

    #[test]
    fn csv_layout() {
        let csv = sample().to_csv();
        assert_eq!(csv, "# family: bell\n# sigma: 1/2\n# table: rows\nk,x,c\n1,0.1,-1/2,3\n2,-inf\n");
    }

    #[test]
    fn json_layout() {
        let j = sample().to_json();
        assert_eq!(j["meta"]["sigma"], "1/2");
        assert_eq!(j["data"]["rows"][0]["x"], 0.1);
        assert_eq!(j["data"]["rows"][0]["c"][0], "-1/2");
        assert_eq!(j["data"]["rows"][1]["x"], "-inf");
    }

    #[test]
    fn floats_round_trip() {
        for x in [0.1, 1.0 / 3.0, 1e-300, -2.5e17, 5e-324] {
            assert_eq!(float_text(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn text_with_commas_is_quoted() {
        assert_eq!(csv_quote("a,b"), "\"a,b\"");
        assert_eq!(csv_quote("say \"x\", y"), "\"say \"\"x\"\", y\"");
    }
}
