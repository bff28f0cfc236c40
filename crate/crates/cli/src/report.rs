//! JSON reports. Keys keep insertion order, so equal inputs give
//! byte-identical output.

use rbprelie::exactla::format_rational;
use rbprelie::{Rational, Verdict};
use serde_json::{json, Map, Value};

pub fn rationals(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|q| Value::String(format_rational(q))).collect())
}

/// A verdict with 1-based witnesses, at most `limit` of them.
pub fn verdict(v: &Verdict, limit: usize) -> Value {
    let witnesses: Vec<Value> = v
        .violations
        .iter()
        .take(limit)
        .map(|w| {
            json!({
                "law": w.law,
                "basis": w.basis.iter().map(|i| i + 1).collect::<Vec<_>>(),
                "defect": rationals(&w.defect),
            })
        })
        .collect();
    let mut out = Map::new();
    out.insert("ok".into(), Value::Bool(v.is_ok()));
    out.insert("violation_count".into(), json!(v.violations.len()));
    out.insert("laws_violated".into(), json!(v.laws_violated()));
    out.insert("witnesses".into(), Value::Array(witnesses));
    if !v.flags.is_empty() {
        out.insert("flags".into(), json!(v.flags));
    }
    Value::Object(out)
}

/// Report under construction. `failed` is set by any failing verdict.
#[derive(Debug, Clone)]
pub struct Report {
    fields: Map<String, Value>,
    failed: bool,
    limit: usize,
}

impl Report {
    pub fn new(command: &str, argv: &[String], limit: usize) -> Self {
        let mut fields = Map::new();
        fields.insert("command".into(), json!(command));
        fields.insert("arguments".into(), json!(argv));
        Self {
            fields,
            failed: false,
            limit,
        }
    }

    pub fn insert(&mut self, key: &str, value: Value) {
        self.fields.insert(key.to_string(), value);
    }

    pub fn verdict(&mut self, key: &str, v: &Verdict) {
        self.failed |= !v.is_ok();
        let value = verdict(v, self.limit);
        self.insert(key, value);
    }

    /// Records a yes/no outcome that fails the report when false.
    pub fn require(&mut self, key: &str, holds: bool) {
        self.failed |= !holds;
        self.insert(key, Value::Bool(holds));
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    pub fn fail(&mut self) {
        self.failed = true;
    }

    pub fn failed(&self) -> bool {
        self.failed
    }

    pub fn exit_code(&self) -> i32 {
        i32::from(self.failed)
    }

    /// Final JSON text with `status` and `exit_code` after the echo.
    pub fn finish(self) -> String {
        let mut out = Map::new();
        let mut rest = self.fields.into_iter();
        for (k, v) in rest.by_ref().take(2) {
            out.insert(k, v);
        }
        out.insert("status".into(), json!(if self.failed { "violation" } else { "ok" }));
        out.insert("exit_code".into(), json!(i32::from(self.failed)));
        out.extend(rest);
        let mut s = serde_json::to_string_pretty(&Value::Object(out)).expect("json values serialize");
        s.push('\n');
        s
    }
}

/// Report for a run that stopped on an error.
pub fn error_report(command: &str, argv: &[String], kind: &str, message: &str, exit_code: i32) -> String {
    let value = json!({
        "command": command,
        "arguments": argv,
        "status": "error",
        "exit_code": exit_code,
        "error": { "kind": kind, "message": message },
    });
    let mut s = serde_json::to_string_pretty(&value).expect("json values serialize");
    s.push('\n');
    s
}
