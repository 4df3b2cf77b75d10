//! Run reports emitted by the command-line tool.

use serde_json::{json, Map, Value};

use crate::document::canonical;
use crate::error::{Error, Result};

/// Outcome of one command. Serialized with sorted keys; `timing` is `null`
/// unless wall-clock timing was requested, so reports are reproducible.
#[derive(Clone, Debug, PartialEq)]
pub struct RunReport {
    pub command: Vec<String>,
    pub parameters: Map<String, Value>,
    pub verdict: bool,
    pub summary: Map<String, Value>,
    pub witness: Option<Value>,
    pub counterexample: Option<Value>,
    pub timing_ms: Option<u64>,
}

impl RunReport {
    pub fn new(command: Vec<String>) -> RunReport {
        RunReport {
            command,
            parameters: Map::new(),
            verdict: true,
            summary: Map::new(),
            witness: None,
            counterexample: None,
            timing_ms: None,
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn note(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.summary.insert(key.to_string(), value.into());
        self
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "parameters": self.parameters,
            "verdict": self.verdict,
            "summary": self.summary,
            "witness": self.witness,
            "counterexample": self.counterexample,
            "timing": self.timing_ms.map(|ms| json!({"elapsed_ms": ms})),
        })
    }

    pub fn to_text(&self) -> String {
        canonical(&self.to_json())
    }

    pub fn from_json(v: &Value) -> Result<RunReport> {
        let bad = |field: &str, what: &str| Error::document(format!("$.{field}"), format!("expected {what}"));
        let obj = |field: &str| -> Result<Map<String, Value>> {
            v.get(field)
                .and_then(Value::as_object)
                .cloned()
                .ok_or_else(|| bad(field, "an object"))
        };
        let optional = |field: &str| v.get(field).filter(|x| !x.is_null()).cloned();
        let command = v
            .get("command")
            .and_then(Value::as_array)
            .and_then(|a| a.iter().map(|s| s.as_str().map(str::to_string)).collect::<Option<Vec<_>>>())
            .ok_or_else(|| bad("command", "an array of strings"))?;
        let timing_ms = match optional("timing") {
            None => None,
            Some(t) => Some(
                t.get("elapsed_ms")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| bad("timing.elapsed_ms", "an integer"))?,
            ),
        };
        Ok(RunReport {
            command,
            parameters: obj("parameters")?,
            verdict: v.get("verdict").and_then(Value::as_bool).ok_or_else(|| bad("verdict", "a boolean"))?,
            summary: obj("summary")?,
            witness: optional("witness"),
            counterexample: optional("counterexample"),
            timing_ms,
        })
    }

    pub fn parse(text: &str) -> Result<RunReport> {
        RunReport::from_json(&serde_json::from_str(text)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_round_trips_byte_identically() {
        let mut r = RunReport::new(vec!["classes".into(), "x.json".into()]);
        r.param("instance", "set2").param("guard", 100u64).note("classes", 1);
        r.witness = Some(json!({"b": 1, "a": [1, 2]}));
        r.timing_ms = Some(3);
        let text = r.to_text();
        let back = RunReport::parse(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_text(), text);
        assert!(text.find("\"command\"").unwrap() < text.find("\"verdict\"").unwrap());
    }
}
