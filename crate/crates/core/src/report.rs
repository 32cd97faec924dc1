//! The JSON report shared by every experiment, and its text rendering.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::Error;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub passed: bool,
    #[serde(default)]
    pub value: Value,
    #[serde(default)]
    pub detail: String,
}

/// Points (indices) at which an invariant fails or a property is attained.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub invariant: String,
    pub indices: Vec<usize>,
    #[serde(default)]
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Timing {
    pub wall_seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub subcommand: String,
    pub config: Value,
    pub verdicts: Vec<Verdict>,
    pub witnesses: Vec<Witness>,
    pub timing: Timing,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(subcommand: impl Into<String>, config: Value) -> Self {
        Report {
            subcommand: subcommand.into(),
            config,
            verdicts: Vec::new(),
            witnesses: Vec::new(),
            timing: Timing { wall_seconds: 0.0 },
            notes: Vec::new(),
        }
    }

    pub fn verdict(&mut self, name: impl Into<String>, passed: bool, value: impl Serialize, detail: impl Into<String>) -> &mut Self {
        self.verdicts.push(Verdict {
            name: name.into(),
            passed,
            value: serde_json::to_value(value).unwrap_or(Value::Null),
            detail: detail.into(),
        });
        self
    }

    pub fn witness(&mut self, invariant: impl Into<String>, indices: Vec<usize>, detail: impl Into<String>) -> &mut Self {
        self.witnesses.push(Witness {
            invariant: invariant.into(),
            indices,
            detail: detail.into(),
        });
        self
    }

    pub fn note(&mut self, note: impl Into<String>) -> &mut Self {
        self.notes.push(note.into());
        self
    }

    /// Records a failure verdict and witness for `err`.
    pub fn error(&mut self, err: &Error) -> &mut Self {
        let class = err.class();
        self.verdict(class.as_str(), false, Value::Null, err.to_string());
        self.witness(class.as_str(), err.witness().to_vec(), err.to_string())
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    /// Aligned text table: one row per verdict, then witnesses and notes.
    pub fn to_table(&self) -> String {
        let mut out = format!("{} ({:.3} s)\n", self.subcommand, self.timing.wall_seconds);
        let rows: Vec<[String; 4]> = self
            .verdicts
            .iter()
            .map(|v| {
                [
                    v.name.clone(),
                    if v.passed { "pass" } else { "FAIL" }.to_string(),
                    compact(&v.value),
                    v.detail.clone(),
                ]
            })
            .collect();
        out.push_str(&table(&["verdict", "status", "value", "detail"], &rows));
        for w in &self.witnesses {
            out.push_str(&format!("  witness {} {:?} {}\n", w.invariant, w.indices, w.detail));
        }
        for n in &self.notes {
            out.push_str(&format!("  note: {n}\n"));
        }
        out
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => {
            let s = other.to_string();
            if s.len() > 40 {
                format!("{}...", &s[..s.char_indices().nth(37).map_or(s.len(), |(i, _)| i)])
            } else {
                s
            }
        }
    }
}

/// Left-aligned columns separated by two spaces.
pub fn table<const N: usize>(header: &[&str; N], rows: &[[String; N]]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (i, (c, w)) in cells.iter().zip(&width).enumerate() {
            if i + 1 == N {
                s.push_str(c);
            } else {
                s.push_str(&format!("{c:<w$}  "));
            }
        }
        s.trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}

/// One row per report: subcommand, verdict counts and wall time.
pub fn summary_table(reports: &[Report]) -> String {
    let rows: Vec<[String; 4]> = reports
        .iter()
        .map(|r| {
            let passed = r.verdicts.iter().filter(|v| v.passed).count();
            [
                r.subcommand.clone(),
                format!("{passed}/{}", r.verdicts.len()),
                if r.passed() { "pass" } else { "FAIL" }.to_string(),
                format!("{:.3}", r.timing.wall_seconds),
            ]
        })
        .collect();
    table(&["subcommand", "verdicts", "status", "seconds"], &rows)
}
