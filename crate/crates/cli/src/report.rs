//! Structured command reports: one per invocation, rendered as stable
//! line-oriented text or as a single JSON document.

use serde::Serialize;
use serde_json::Value;
use std::fmt::Write as _;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// The requested check or construction succeeded.
    Ok,
    /// The command ran but the answer is negative (invalid formula, no
    /// witness); the payload carries the countermodel or the absence.
    Fail,
    /// The command could not run: bad input, budget, or file trouble.
    Error,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Format {
    Human,
    Json,
}

#[derive(Serialize)]
pub struct Report {
    pub command: &'static str,
    pub status: Status,
    pub payload: Value,
    pub diagnostics: Vec<String>,
}

impl Report {
    pub fn ok(command: &'static str, payload: Value) -> Report {
        Report { command, status: Status::Ok, payload, diagnostics: Vec::new() }
    }

    pub fn fail(command: &'static str, payload: Value, note: impl Into<String>) -> Report {
        Report { command, status: Status::Fail, payload, diagnostics: vec![note.into()] }
    }

    pub fn error(command: &'static str, message: impl Into<String>) -> Report {
        Report {
            command,
            status: Status::Error,
            payload: Value::Null,
            diagnostics: vec![message.into()],
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Ok => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut text = serde_json::to_string(self).expect("report serializes");
                text.push('\n');
                text
            }
            Format::Human => self.render_human(),
        }
    }

    fn render_human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        let status = match self.status {
            Status::Ok => "ok",
            Status::Fail => "fail",
            Status::Error => "error",
        };
        let _ = writeln!(out, "status: {status}");
        if let Value::Object(map) = &self.payload {
            for (key, value) in map {
                render_entry(&mut out, key, value, 0);
            }
        } else if !self.payload.is_null() {
            render_entry(&mut out, "payload", &self.payload, 0);
        }
        for d in &self.diagnostics {
            let prefix = if self.status == Status::Error { "error" } else { "note" };
            let _ = writeln!(out, "{prefix}: {d}");
        }
        out
    }
}

/// A value renders on one line when it is a scalar or an array of scalars.
fn inline(value: &Value) -> Option<String> {
    match value {
        Value::Null => Some("none".to_string()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) => {
            let mut parts = Vec::with_capacity(items.len());
            for item in items {
                match item {
                    Value::Array(_) | Value::Object(_) => return None,
                    _ => parts.push(inline(item)?),
                }
            }
            Some(format!("[{}]", parts.join(", ")))
        }
        Value::Object(_) => None,
    }
}

fn render_entry(out: &mut String, key: &str, value: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    if let Some(line) = inline(value) {
        let _ = writeln!(out, "{pad}{key}: {line}");
        return;
    }
    let _ = writeln!(out, "{pad}{key}:");
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                render_entry(out, k, v, indent + 1);
            }
        }
        Value::Array(items) => {
            let item_pad = "  ".repeat(indent + 1);
            for item in items {
                if let Some(line) = inline(item) {
                    let _ = writeln!(out, "{item_pad}- {line}");
                } else {
                    let _ = writeln!(out, "{item_pad}-");
                    match item {
                        Value::Object(map) => {
                            for (k, v) in map {
                                render_entry(out, k, v, indent + 2);
                            }
                        }
                        Value::Array(_) => render_entry(out, "items", item, indent + 2),
                        _ => {}
                    }
                }
            }
        }
        _ => {}
    }
}
