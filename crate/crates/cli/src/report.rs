use std::fmt::Write;

use serde::Serialize;
use serde_json::Value;
use srcw::{Coloring, WordClass};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Yes,
    No,
    Error,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Yes => 0,
            Outcome::No => 1,
            Outcome::Error => 2,
        }
    }

    pub fn from_bool(b: bool) -> Outcome {
        if b {
            Outcome::Yes
        } else {
            Outcome::No
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub states: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub word: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<WordClass>,
    pub decision: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Coloring>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_path: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_agrees: Option<bool>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub elapsed_ms: f64,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            command: command.to_string(),
            states: None,
            word: None,
            class: None,
            decision: Outcome::Error,
            method: None,
            witness: None,
            witness_path: None,
            oracle_agrees: None,
            warnings: Vec::new(),
            details: None,
            error: None,
            elapsed_ms: 0.0,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One `key  value` line per present field, keys padded to a common width.
    pub fn to_text(&self) -> String {
        let Value::Object(fields) = serde_json::to_value(self).expect("report serializes") else {
            unreachable!()
        };
        let width = fields.keys().map(String::len).max().unwrap_or(0);
        let mut out = String::new();
        for (key, value) in &fields {
            let shown = match value {
                Value::String(s) => s.clone(),
                Value::Array(items) if key == "warnings" => items
                    .iter()
                    .map(|v| v.as_str().unwrap_or_default().to_string())
                    .collect::<Vec<_>>()
                    .join("; "),
                other => other.to_string(),
            };
            writeln!(out, "{key:<width$}  {shown}").unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_is_aligned_and_skips_absent_fields() {
        let mut r = RunReport::new("classify");
        r.word = Some("abb".into());
        r.decision = Outcome::Yes;
        let text = r.to_text();
        assert!(text.contains("command     classify\n"));
        assert!(text.contains("decision    yes\n"));
        assert!(!text.contains("witness"));
        assert_eq!(Outcome::No.exit_code(), 1);
    }
}
