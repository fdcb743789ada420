//! Machine-readable certificate reports.
//!
//! JSON objects use sorted keys, so identical inputs serialize to identical
//! bytes.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: Value,
    pub actual: Value,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub params: Value,
    pub results: Value,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            command: command.into(),
            params: Value::Object(Map::new()),
            results: Value::Object(Map::new()),
            checks: Vec::new(),
        }
    }

    fn insert(target: &mut Value, key: &str, value: Value) {
        if let Value::Object(m) = target {
            m.insert(key.to_string(), value);
        }
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        Self::insert(&mut self.params, key, to_value(value));
        self
    }

    pub fn result(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        Self::insert(&mut self.results, key, to_value(value));
        self
    }

    /// Passes iff `expected == actual`.
    pub fn check(
        &mut self,
        name: impl Into<String>,
        expected: impl Serialize,
        actual: impl Serialize,
    ) -> bool {
        let (expected, actual) = (to_value(expected), to_value(actual));
        let pass = expected == actual;
        self.checks.push(Check {
            name: name.into(),
            expected,
            actual,
            pass,
        });
        pass
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report values are plain JSON")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    /// One row per check.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["command", "name", "expected", "actual", "pass"])
            .expect("in-memory write");
        for c in &self.checks {
            w.write_record([
                self.command.as_str(),
                c.name.as_str(),
                &c.expected.to_string(),
                &c.actual.to_string(),
                if c.pass { "true" } else { "false" },
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.command);
        if let Value::Object(m) = &self.params {
            for (k, v) in m {
                s.push_str(&format!("  param  {k} = {v}\n"));
            }
        }
        if let Value::Object(m) = &self.results {
            for (k, v) in m {
                let v = v.to_string();
                let v = if v.len() > 200 {
                    format!("{}...", &v[..200])
                } else {
                    v
                };
                s.push_str(&format!("  result {k} = {v}\n"));
            }
        }
        for c in &self.checks {
            let tag = if c.pass { "PASS" } else { "FAIL" };
            s.push_str(&format!(
                "  {tag}   {}: expected {}, got {}\n",
                c.name, c.expected, c.actual
            ));
        }
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json() + "\n",
            Format::Csv => self.to_csv(),
            Format::Text => self.to_text(),
        }
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("report values are plain JSON")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("hirokado d2");
        r.param("p", 3)
            .result("kernel_basis", vec![vec![1u32, 2], vec![0, 1]]);
        r.check("kernel_dim", 41, 41);
        r.check("rank", 89, 88);
        r
    }

    #[test]
    fn json_round_trip() {
        let r = sample();
        assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
        assert!(Report::from_json("{").is_err());
    }

    #[test]
    fn exit_status_follows_checks() {
        let mut r = sample();
        assert!(!r.passed());
        assert_eq!(r.exit_code(), 1);
        r.checks.pop();
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn csv_has_a_row_per_check() {
        let csv = sample().to_csv();
        assert_eq!(csv.lines().count(), 3);
        assert!(csv.lines().nth(2).unwrap().ends_with(",false"));
    }

    #[test]
    fn text_marks_failures() {
        let t = sample().to_text();
        assert!(t.contains("PASS   kernel_dim"));
        assert!(t.contains("FAIL   rank"));
    }
}
