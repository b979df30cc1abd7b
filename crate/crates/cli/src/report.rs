use std::collections::BTreeMap;
use std::fmt::Write;

use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Flat key-sorted report. Values are integers, booleans or strings.
#[derive(Debug, Default)]
pub struct Report {
    entries: BTreeMap<String, Value>,
    failed: Vec<String>,
}

impl Report {
    pub fn int(&mut self, key: impl Into<String>, v: i64) {
        self.entries.insert(key.into(), Value::from(v));
    }

    pub fn text(&mut self, key: impl Into<String>, v: impl Into<String>) {
        self.entries.insert(key.into(), Value::from(v.into()));
    }

    pub fn flag(&mut self, key: impl Into<String>, v: bool) {
        self.entries.insert(key.into(), Value::from(v));
    }

    /// A verification verdict; a false one makes the run fail.
    pub fn check(&mut self, key: impl Into<String>, ok: bool) {
        let key = key.into();
        if !ok {
            self.failed.push(key.clone());
        }
        self.flag(key, ok);
    }

    pub fn passed(&self) -> bool {
        self.failed.is_empty()
    }

    pub fn fail(&mut self, key: &str, msg: String) {
        self.failed.push(key.to_string());
        self.text(key, msg);
    }

    pub fn render(&mut self, format: Format) -> String {
        let ok = self.passed();
        self.flag("verified", ok);
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.entries).expect("plain values");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut s = String::new();
                for (k, v) in &self.entries {
                    match v {
                        Value::String(t) => writeln!(s, "{k} = {t}").unwrap(),
                        other => writeln!(s, "{k} = {other}").unwrap(),
                    }
                }
                s
            }
        }
    }
}
