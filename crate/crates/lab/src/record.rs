//! Result tables and their CSV/JSON encodings.
//!
//! CSV layout:
//!
//! ```text
//! # schema=1, config=<hash>
//! experiment,config,<key columns..>,<value columns..>
//! gram,<hash>,...
//! ```
//!
//! Reals are written with 17 significant digits (`{:.16e}`), which round-trips
//! every f64. Rows are sorted by their key tuple.

use std::cmp::Ordering;
use std::fmt::Write as _;

use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub enum Key {
    Int(u64),
    Real(f64),
    Text(String),
}

impl Key {
    fn rank(&self) -> u8 {
        match self {
            Key::Int(_) => 0,
            Key::Real(_) => 1,
            Key::Text(_) => 2,
        }
    }

    fn cmp_total(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Key::Int(a), Key::Int(b)) => a.cmp(b),
            (Key::Real(a), Key::Real(b)) => a.total_cmp(b),
            (Key::Text(a), Key::Text(b)) => a.cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }

    fn csv(&self) -> String {
        match self {
            Key::Int(v) => v.to_string(),
            Key::Real(v) => real(*v),
            Key::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Key::Int(v) => json!(v),
            Key::Real(v) => json!(v),
            Key::Text(s) => json!(s),
        }
    }
}

impl From<usize> for Key {
    fn from(v: usize) -> Self {
        Key::Int(v as u64)
    }
}

impl From<f64> for Key {
    fn from(v: f64) -> Self {
        Key::Real(v)
    }
}

impl From<&str> for Key {
    fn from(v: &str) -> Self {
        Key::Text(v.to_string())
    }
}

impl From<String> for Key {
    fn from(v: String) -> Self {
        Key::Text(v)
    }
}

/// 17 significant digits.
pub fn real(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub keys: Vec<Key>,
    pub values: Vec<f64>,
}

/// An assertion-grade check made while running an experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct Assertion {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Assertion {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub experiment: String,
    pub key_names: Vec<&'static str>,
    pub value_names: Vec<&'static str>,
    pub rows: Vec<Row>,
    pub assertions: Vec<Assertion>,
}

impl Table {
    pub fn new(
        experiment: impl Into<String>,
        key_names: &[&'static str],
        value_names: &[&'static str],
    ) -> Self {
        Self {
            experiment: experiment.into(),
            key_names: key_names.to_vec(),
            value_names: value_names.to_vec(),
            rows: Vec::new(),
            assertions: Vec::new(),
        }
    }

    pub fn push(&mut self, keys: Vec<Key>, values: Vec<f64>) {
        assert_eq!(keys.len(), self.key_names.len(), "key arity");
        assert_eq!(values.len(), self.value_names.len(), "value arity");
        for k in &keys {
            if let Key::Text(s) = k {
                assert!(!s.contains([',', '\n', '"']), "text keys stay CSV-safe");
            }
        }
        self.rows.push(Row { keys, values });
    }

    pub fn assert(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.assertions.push(Assertion::new(name, passed, detail));
    }

    pub fn all_passed(&self) -> bool {
        self.assertions.iter().all(|a| a.passed)
    }

    /// Orders rows by key tuple; ties keep insertion order.
    pub fn sort(&mut self) {
        self.rows.sort_by(|a, b| {
            a.keys
                .iter()
                .zip(&b.keys)
                .map(|(x, y)| x.cmp_total(y))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        });
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.value_names.iter().position(|n| *n == name)?;
        Some(self.rows.iter().map(|r| r.values[i]).collect())
    }

    pub fn to_csv(&self, config_hash: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# schema={SCHEMA_VERSION}, config={config_hash}");
        let mut header = vec!["experiment", "config"];
        header.extend(&self.key_names);
        header.extend(&self.value_names);
        out.push_str(&header.join(","));
        out.push('\n');
        for row in &self.rows {
            let mut cells = vec![self.experiment.clone(), config_hash.to_string()];
            cells.extend(row.keys.iter().map(Key::csv));
            cells.extend(row.values.iter().map(|&v| real(v)));
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// Non-finite reals become `null`.
    pub fn to_json(&self, config_hash: &str) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let mut obj = serde_json::Map::new();
                obj.insert("config".into(), json!(config_hash));
                for (name, k) in self.key_names.iter().zip(&r.keys) {
                    obj.insert((*name).into(), k.json());
                }
                for (name, v) in self.value_names.iter().zip(&r.values) {
                    obj.insert((*name).into(), json!(v));
                }
                Value::Object(obj)
            })
            .collect();
        let assertions: Vec<Value> = self
            .assertions
            .iter()
            .map(|a| json!({"name": a.name, "passed": a.passed, "detail": a.detail}))
            .collect();
        let doc = json!({
            "schema": SCHEMA_VERSION,
            "config": config_hash,
            "experiment": self.experiment,
            "keys": self.key_names,
            "values": self.value_names,
            "rows": rows,
            "assertions": assertions,
        });
        let mut text = serde_json::to_string_pretty(&doc).expect("table serializes");
        text.push('\n');
        text
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new("demo", &["p", "n"], &["err"]);
        t.push(vec![0.5.into(), 10usize.into()], vec![0.25]);
        t.push(vec![0.5.into(), 2usize.into()], vec![1.0 / 3.0]);
        t.push(vec![0.25.into(), 7usize.into()], vec![f64::NAN]);
        t.sort();
        t
    }

    #[test]
    fn csv_layout() {
        let csv = sample().to_csv("abc");
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "# schema=1, config=abc");
        assert_eq!(lines[1], "experiment,config,p,n,err");
        assert_eq!(lines[2], "demo,abc,2.5000000000000000e-1,7,NaN");
        assert_eq!(
            lines[3],
            "demo,abc,5.0000000000000000e-1,2,3.3333333333333331e-1"
        );
        assert_eq!(
            lines[4],
            "demo,abc,5.0000000000000000e-1,10,2.5000000000000000e-1"
        );
    }

    #[test]
    fn seventeen_digits_round_trip() {
        for v in [
            1.0 / 3.0,
            std::f64::consts::PI,
            1e-300,
            123456789.12345679,
            -0.1,
        ] {
            assert_eq!(real(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn json_layout() {
        let doc: Value = serde_json::from_str(&sample().to_json("abc")).unwrap();
        assert_eq!(doc["schema"], 1);
        assert_eq!(doc["rows"][0]["err"], Value::Null);
        assert_eq!(doc["rows"][2]["n"], 10);
        assert_eq!(doc["rows"][1]["config"], "abc");
    }

    #[test]
    #[should_panic(expected = "value arity")]
    fn arity_is_enforced() {
        let mut t = Table::new("demo", &["n"], &["a", "b"]);
        t.push(vec![1usize.into()], vec![1.0]);
    }
}
