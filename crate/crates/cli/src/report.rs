use std::fmt::Write as _;

use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "ghc-report v1";

pub struct Case {
    pub name: String,
    pub ok: bool,
    pub fields: Vec<(String, Value)>,
}

impl Case {
    pub fn new(name: impl Into<String>, ok: bool) -> Self {
        Case { name: name.into(), ok, fields: Vec::new() }
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.fields.push((key.to_string(), value.into()));
        self
    }
}

/// Everything a subcommand prints. Cases keep insertion order, which every
/// subcommand makes canonical (input order, never completion order).
pub struct Report {
    pub command: String,
    pub cases: Vec<Case>,
    pub summary: Vec<(String, Value)>,
    pub wall_ms: Option<f64>,
}

impl Report {
    pub fn new(command: String) -> Self {
        Report { command, cases: Vec::new(), summary: Vec::new(), wall_ms: None }
    }

    pub fn push(&mut self, case: Case) {
        self.cases.push(case);
    }

    pub fn summary(&mut self, key: &str, value: impl Into<Value>) {
        self.summary.push((key.to_string(), value.into()));
    }

    pub fn failed(&self) -> usize {
        self.cases.iter().filter(|c| !c.ok).count()
    }

    pub fn exit_code(&self) -> i32 {
        if self.failed() > 0 {
            1
        } else {
            0
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# {SCHEMA}");
        let _ = writeln!(out, "command: {}", self.command);
        for c in &self.cases {
            let _ = write!(out, "case {} {}", c.name, if c.ok { "ok" } else { "FAIL" });
            for (k, v) in &c.fields {
                let _ = write!(out, " {k}={}", plain(v));
            }
            out.push('\n');
        }
        let _ = write!(out, "summary: cases={} failed={}", self.cases.len(), self.failed());
        for (k, v) in &self.summary {
            let _ = write!(out, " {k}={}", plain(v));
        }
        out.push('\n');
        let _ = writeln!(out, "status: {}", if self.failed() == 0 { "ok" } else { "counterexample" });
        if let Some(ms) = self.wall_ms {
            let _ = writeln!(out, "wall_ms: {ms:.3}");
        }
        out
    }

    pub fn to_json(&self) -> String {
        let cases: Vec<Value> = self
            .cases
            .iter()
            .map(|c| json!({ "name": c.name, "ok": c.ok, "fields": object(&c.fields) }))
            .collect();
        let mut summary = object(&self.summary);
        summary.insert("cases".into(), self.cases.len().into());
        summary.insert("failed".into(), self.failed().into());
        let mut v = json!({
            "schema": SCHEMA,
            "command": self.command,
            "cases": cases,
            "summary": summary,
            "status": if self.failed() == 0 { "ok" } else { "counterexample" },
        });
        if let Some(ms) = self.wall_ms {
            v["wall_ms"] = json!(ms);
        }
        let mut s = serde_json::to_string_pretty(&v).expect("reports are plain JSON");
        s.push('\n');
        s
    }
}

fn object(fields: &[(String, Value)]) -> Map<String, Value> {
    fields.iter().cloned().collect()
}

/// Values in the text form: strings without quotes, everything else as JSON.
fn plain(v: &Value) -> String {
    match v {
        Value::String(s) if s.is_empty() => "\"\"".into(),
        Value::String(s) if s.contains(char::is_whitespace) => format!("{s:?}"),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
