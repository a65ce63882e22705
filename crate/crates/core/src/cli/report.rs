use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::tropical::NatSet;

/// One command's output. Text and JSON are rendered from the same fields.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: Vec<String>,
    /// Result lines, most important first.
    pub lines: Vec<String>,
    pub result: Value,
    /// Verification metadata, printed after the result in text mode.
    pub meta: Vec<(&'static str, Value, String)>,
}

impl Report {
    pub fn new(command: &[String], truncation: usize) -> Self {
        Report {
            command: command.to_vec(),
            lines: Vec::new(),
            result: Value::Null,
            meta: vec![("truncation", json!(truncation), truncation.to_string())],
        }
    }

    pub fn line(&mut self, s: impl Into<String>) -> &mut Self {
        self.lines.push(s.into());
        self
    }

    pub fn result(&mut self, v: impl Serialize) -> &mut Self {
        self.result = serde_json::to_value(v).expect("report values serialize");
        self
    }

    /// Record metadata; `text` is its human-readable rendering.
    pub fn meta(
        &mut self,
        key: &'static str,
        v: impl Serialize,
        text: impl Into<String>,
    ) -> &mut Self {
        let v = serde_json::to_value(v).expect("report values serialize");
        self.meta.retain(|(k, _, _)| *k != key);
        self.meta.push((key, v, text.into()));
        self
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        for (k, _, t) in &self.meta {
            out.push_str(&format!("{}: {t}\n", k.replace('_', " ")));
        }
        out
    }

    pub fn json(&self) -> String {
        let mut doc = Map::new();
        doc.insert("command".into(), json!(self.command));
        doc.insert("result".into(), self.result.clone());
        for (k, v, _) in &self.meta {
            doc.insert((*k).into(), v.clone());
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(doc)).expect("json");
        s.push('\n');
        s
    }
}

/// `({2,3}, {})`; a single component prints without parentheses.
pub fn tuple_text(s: &[NatSet]) -> String {
    match s {
        [one] => one.to_string(),
        _ => {
            let parts: Vec<String> = s.iter().map(ToString::to_string).collect();
            format!("({})", parts.join(", "))
        }
    }
}
