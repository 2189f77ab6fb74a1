//! Report envelope shared by every command: inputs echoed back, a verdict,
//! timing, and an optional command-specific result payload.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use sumsetlab::complements::{Status, Verdict, Witness};
use sumsetlab::oracle::Window;
use sumsetlab::value::SetValue;

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct VerdictOut {
    pub status: Status,
    pub witnesses: Vec<Witness>,
    pub note: String,
}

impl VerdictOut {
    pub fn new(status: Status, witnesses: Vec<Witness>, note: impl Into<String>) -> Self {
        VerdictOut { status, witnesses, note: note.into() }
    }

    pub fn info(note: impl Into<String>) -> Self {
        VerdictOut::new(Status::CertifiedYes, Vec::new(), note)
    }
}

impl From<Verdict> for VerdictOut {
    fn from(v: Verdict) -> Self {
        let mut note = v.note;
        if let Some(w) = v.window {
            let _ = write!(note, " [window {}..{}]", w.lo(), w.hi());
        }
        VerdictOut {
            status: v.status,
            witnesses: v.witness.into_iter().collect(),
            note,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub verdict: VerdictOut,
    pub timing_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<serde_json::Value>,
}

impl Report {
    pub fn new(command: impl Into<String>, verdict: VerdictOut) -> Self {
        Report {
            command: command.into(),
            inputs: BTreeMap::new(),
            verdict,
            timing_ms: 0,
            result: None,
        }
    }

    pub fn input(mut self, key: &str, value: impl ToString) -> Self {
        self.inputs.insert(key.to_string(), value.to_string());
        self
    }

    pub fn result(mut self, value: impl Serialize) -> Self {
        self.result = Some(serde_json::to_value(value).expect("result serializes"));
        self
    }

    pub fn exit_code(&self) -> i32 {
        self.verdict.status.exit_code()
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}: {}", self.command, status_name(self.verdict.status));
        for (k, v) in &self.inputs {
            let _ = writeln!(out, "  {k}: {v}");
        }
        if !self.verdict.witnesses.is_empty() {
            let strs: Vec<String> = self.verdict.witnesses.iter().map(witness_text).collect();
            let _ = writeln!(out, "  witnesses: {}", strs.join(", "));
        }
        let _ = writeln!(out, "  note: {}", self.verdict.note);
        if let Some(result) = &self.result {
            let _ = writeln!(out, "  result:");
            render_value(result, 4, &mut out);
        }
        out
    }
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::CertifiedYes => "CERTIFIED_YES",
        Status::CertifiedNo => "CERTIFIED_NO",
        Status::Unknown => "UNKNOWN",
    }
}

fn witness_text(w: &Witness) -> String {
    match w {
        Witness::Point(z) => z.to_string(),
        Witness::Triple(a, b, c) => format!("({a}, {b}, {c})"),
    }
}

fn render_value(v: &serde_json::Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        serde_json::Value::Object(map) => {
            for (k, val) in map {
                match val {
                    serde_json::Value::Object(_) | serde_json::Value::Array(_)
                        if !is_short(val) =>
                    {
                        let _ = writeln!(out, "{pad}{k}:");
                        render_value(val, indent + 2, out);
                    }
                    _ => {
                        let _ = writeln!(out, "{pad}{k}: {}", inline(val));
                    }
                }
            }
        }
        serde_json::Value::Array(items) => {
            for item in items {
                if is_short(item) {
                    let _ = writeln!(out, "{pad}- {}", inline(item));
                } else {
                    let _ = writeln!(out, "{pad}-");
                    render_value(item, indent + 2, out);
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", inline(other));
        }
    }
}

fn is_short(v: &serde_json::Value) -> bool {
    inline(v).len() <= 100
}

fn inline(v: &serde_json::Value) -> String {
    serde_json::to_string(v).expect("json value serializes")
}

/// Compact human description of a set value plus its members near a window.
pub fn describe_set(v: &SetValue, win: Window) -> String {
    let members = v.members_between(win.lo(), win.hi());
    let shown: Vec<String> = members.iter().take(64).map(|m| m.to_string()).collect();
    let suffix = if members.len() > 64 {
        format!(", ... ({} total in window)", members.len())
    } else {
        String::new()
    };
    match v {
        SetValue::Periodic(p) => format!(
            "periodic (period {}) with members in [{}, {}]: {{{}{}}}",
            p.period(),
            win.lo(),
            win.hi(),
            shown.join(", "),
            suffix
        ),
        SetValue::Windowed(w) => format!(
            "windowed on [{}, {}] with members in [{}, {}]: {{{}{}}}",
            w.window().lo(),
            w.window().hi(),
            win.lo(),
            win.hi(),
            shown.join(", "),
            suffix
        ),
    }
}
