//! JSON-lines reports: a manifest line followed by one line per check.
//!
//! Object keys are emitted in sorted order, so two runs with the same inputs
//! and seed produce the same bytes apart from the manifest timestamp.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};

pub const TOOL_NAME: &str = "schurlab";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub subcommand: String,
    /// Parsed flags of the subcommand.
    pub flags: Map<String, Value>,
    pub seed: Option<u64>,
    pub input: Option<String>,
    pub output: Option<String>,
    /// Seconds since the Unix epoch; the only field allowed to differ
    /// between reruns.
    pub timestamp: Option<u64>,
}

impl RunManifest {
    pub fn new(subcommand: &str) -> Self {
        Self {
            tool: TOOL_NAME.to_string(),
            version: TOOL_VERSION.to_string(),
            subcommand: subcommand.to_string(),
            flags: Map::new(),
            seed: None,
            input: None,
            output: None,
            timestamp: None,
        }
    }

    pub fn with_flags(mut self, flags: &impl Serialize) -> Result<Self> {
        match serde_json::to_value(flags)? {
            Value::Object(m) => self.flags = m,
            Value::Null => {}
            other => {
                self.flags.insert("value".into(), other);
            }
        }
        Ok(self)
    }

    pub fn stamped(mut self) -> Self {
        self.timestamp = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .ok()
            .map(|d| d.as_secs());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub check: String,
    pub passed: bool,
    pub data: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
struct ManifestLine {
    manifest: RunManifest,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub manifest: RunManifest,
    pub records: Vec<Record>,
}

impl Report {
    pub fn new(manifest: RunManifest) -> Self {
        Self { manifest, records: Vec::new() }
    }

    pub fn push(&mut self, check: impl Into<String>, passed: bool, data: &impl Serialize) -> Result<()> {
        self.records.push(Record {
            check: check.into(),
            passed,
            data: serde_json::to_value(data)?,
        });
        Ok(())
    }

    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.passed)
    }

    /// Record lines only, each terminated by a newline.
    pub fn body(&self) -> String {
        let mut s = String::new();
        for r in &self.records {
            // a Record always serializes
            s.push_str(&serde_json::to_string(r).unwrap_or_default());
            s.push('\n');
        }
        s
    }

    pub fn to_json_lines(&self) -> String {
        let head = ManifestLine { manifest: self.manifest.clone() };
        let mut s = serde_json::to_string(&head).unwrap_or_default();
        s.push('\n');
        s + &self.body()
    }

    pub fn from_json_lines(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, first) = lines
            .next()
            .ok_or_else(|| Error::Argument("empty report: missing manifest line".into()))?;
        let head: ManifestLine = serde_json::from_str(first)?;
        let mut records = Vec::new();
        for (i, line) in lines {
            let r: Record = serde_json::from_str(line)
                .map_err(|e| Error::Argument(format!("report line {}: {e}", i + 1)))?;
            records.push(r);
        }
        Ok(Self { manifest: head.manifest, records })
    }

    /// Writes to `path`, or to `out` when no path is given.
    pub fn emit(&self, path: Option<&Path>, out: &mut dyn Write) -> Result<()> {
        let text = self.to_json_lines();
        match path {
            Some(p) => fs::write(p, text)?,
            None => out.write_all(text.as_bytes())?,
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn manifest() -> RunManifest {
        let mut m = RunManifest::new("audit");
        m.seed = Some(1729);
        m
    }

    #[test]
    fn empty_report_is_one_line() {
        let text = Report::new(manifest()).to_json_lines();
        assert_eq!(text.lines().count(), 1);
        assert!(text.starts_with("{\"manifest\":"));
    }

    #[test]
    fn round_trip() {
        let mut r = Report::new(manifest().stamped());
        r.push("a", true, &serde_json::json!({"z": 1, "a": [0.1, 2.0]})).unwrap();
        r.push("b", false, &"text").unwrap();
        let text = r.to_json_lines();
        let back = Report::from_json_lines(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json_lines(), text);
        assert!(!back.passed());
    }

    #[test]
    fn keys_are_sorted() {
        let mut r = Report::new(manifest());
        r.push("a", true, &serde_json::json!({"zeta": 1, "alpha": 2})).unwrap();
        assert!(r.body().find("alpha").unwrap() < r.body().find("zeta").unwrap());
    }

    #[test]
    fn malformed_lines_report_the_position() {
        let text = format!("{}{{\"check\": 3\n", Report::new(manifest()).to_json_lines());
        let e = Report::from_json_lines(&text).unwrap_err().to_string();
        assert!(e.contains("line 2"), "{e}");
    }
}
