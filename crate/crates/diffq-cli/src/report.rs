use std::path::PathBuf;
use std::time::Duration;

use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: u64 = 1;

/// One compared quantity.
#[derive(Clone, Debug)]
pub struct Row {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

impl Row {
    pub fn compare(name: impl Into<String>, lhs: impl ToString, rhs: impl ToString) -> Self {
        let (lhs, rhs) = (lhs.to_string(), rhs.to_string());
        let pass = lhs == rhs;
        Row { name: name.into(), lhs, rhs, pass }
    }

    /// A relation check: `lhs` is the counterexample if there is one.
    pub fn holds(name: impl Into<String>, failure: Option<String>) -> Self {
        let pass = failure.is_none();
        Row { name: name.into(), lhs: failure.unwrap_or_else(|| "holds".into()), rhs: "holds".into(), pass }
    }
}

/// The resolved run configuration, embedded in every report.
#[derive(Clone, Debug, Default)]
pub struct RunConfig {
    pub command: String,
    pub n: usize,
    pub ntw: i64,
    pub degree: Option<usize>,
    pub modes: Option<i64>,
    pub order: Option<usize>,
    pub params: Vec<String>,
    pub half: Option<i64>,
    pub u_root: Option<i64>,
    pub output: Option<PathBuf>,
    pub threads: usize,
    /// the tower needs roots of unity of this order (1 if none)
    pub roots: u32,
}

impl RunConfig {
    pub fn d(&self) -> usize {
        if self.ntw == 0 {
            self.n
        } else {
            num_gcd(self.n as i64, self.ntw) as usize
        }
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), json!(self.command));
        m.insert("n".into(), json!(self.n));
        m.insert("ntw".into(), json!(self.ntw));
        m.insert("d".into(), json!(self.d()));
        m.insert("degree".into(), json!(self.degree));
        m.insert("modes".into(), json!(self.modes));
        m.insert("order".into(), json!(self.order));
        m.insert("params".into(), json!(self.params));
        m.insert("half".into(), json!(self.half));
        m.insert("u_root".into(), json!(self.u_root));
        m.insert("output".into(), json!(self.output.as_ref().map(|p| p.display().to_string())));
        m.insert("threads".into(), json!(self.threads));
        m.insert("tower".into(), json!({ "L": 2 * self.n * self.d(), "M": self.roots }));
        m.insert("schema_version".into(), json!(SCHEMA_VERSION));
        Value::Object(m)
    }
}

fn num_gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub struct Report {
    pub config: RunConfig,
    pub rows: Vec<Row>,
    /// lines printed in the human-readable output only
    pub notes: Vec<String>,
}

impl Report {
    pub fn pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn to_json(&self, elapsed: Option<Duration>) -> Value {
        let results: Vec<Value> =
            self.rows.iter().map(|r| json!({ "name": r.name, "lhs": r.lhs, "rhs": r.rhs, "pass": r.pass })).collect();
        let timing = elapsed.map(|e| json!({ "elapsed_ms": e.as_millis() as u64 }));
        json!({ "config": self.config.to_json(), "results": results, "timing": timing })
    }

    pub fn human(&self) -> String {
        let mut s = String::new();
        for n in &self.notes {
            s.push_str(n);
            s.push('\n');
        }
        for r in &self.rows {
            if r.pass {
                s.push_str(&format!("PASS  {}\n", r.name));
            } else {
                s.push_str(&format!("FAIL  {}\n      lhs: {}\n      rhs: {}\n", r.name, r.lhs, r.rhs));
            }
        }
        let ok = self.rows.iter().filter(|r| r.pass).count();
        s.push_str(&format!("{}/{} checks pass\n", ok, self.rows.len()));
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tower_and_d() {
        let c = RunConfig { n: 4, ntw: 6, roots: 8, ..RunConfig::default() };
        assert_eq!(c.d(), 2);
        assert_eq!(c.to_json()["tower"], json!({ "L": 16, "M": 8 }));
        let c = RunConfig { n: 3, ..RunConfig::default() };
        assert_eq!(c.d(), 3);
    }

    #[test]
    fn rows_and_summary() {
        let r = Report {
            config: RunConfig::default(),
            rows: vec![Row::compare("a", 1, 1), Row::holds("b", Some("x != y".into()))],
            notes: vec![],
        };
        assert!(!r.pass());
        let h = r.human();
        assert!(h.contains("FAIL  b\n      lhs: x != y"));
        assert!(h.ends_with("1/2 checks pass\n"));
        assert_eq!(r.to_json(None)["timing"], Value::Null);
    }
}
