//! Verification ledger: a JSON file of identities, each re-derived by the
//! core modules and compared with its recorded expectation.
//!
//! ```json
//! {"version": 1, "entries": [{"id": "...", "description": "...", "citation": "...",
//!   "kind": "chow-identity", "inputs": {"op": "chow-eval", "c": 2, "expr": "xi^3"},
//!   "expected": {"degree": 2}}]}
//! ```
//!
//! `inputs.c` may be a list, in which case the entry is evaluated once per
//! value and `expected` is either a list of the same length or one object
//! that every result must match. Expected objects match by key subset.

mod ops;

use std::collections::HashSet;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

pub use ops::KNOWN_OPS;

/// The ledger shipped with the crate.
pub const BUNDLED_LEDGER: &str = include_str!("../../ledger/bundled.json");

pub const LEDGER_VERSION: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntryKind {
    ChowIdentity,
    ChiIdentity,
    CohomologyVanishing,
    Inequality,
    Enumeration,
    FamilyInvariant,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LedgerEntry {
    pub id: String,
    pub description: String,
    pub citation: String,
    pub kind: EntryKind,
    pub inputs: Value,
    pub expected: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Ledger {
    pub version: u64,
    pub entries: Vec<LedgerEntry>,
}

const KINDS: [&str; 6] = [
    "chow-identity",
    "chi-identity",
    "cohomology-vanishing",
    "inequality",
    "enumeration",
    "family-invariant",
];

fn parse_error(entry: Option<&str>, message: impl Into<String>) -> Error {
    Error::LedgerParse {
        entry: entry.map(str::to_string),
        message: message.into(),
    }
}

fn schema_error(entry: &str, message: impl Into<String>) -> Error {
    Error::LedgerSchema {
        entry: entry.to_string(),
        message: message.into(),
    }
}

/// Parse and validate ledger text.
pub fn parse_ledger(text: &str) -> Result<Ledger> {
    let root: Value = serde_json::from_str(text).map_err(|e| {
        parse_error(
            None,
            format!("line {}, column {}: {e}", e.line(), e.column()),
        )
    })?;
    let obj = root
        .as_object()
        .ok_or_else(|| parse_error(None, "top level must be an object"))?;
    let version = obj
        .get("version")
        .and_then(Value::as_u64)
        .ok_or_else(|| parse_error(None, "missing integer field \"version\""))?;
    if version != LEDGER_VERSION {
        return Err(parse_error(None, format!("unsupported version {version}")));
    }
    let raw = obj
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_error(None, "missing array field \"entries\""))?;
    let mut seen = HashSet::new();
    let mut entries = Vec::with_capacity(raw.len());
    for (index, item) in raw.iter().enumerate() {
        let id = item.get("id").and_then(Value::as_str).map(str::to_string);
        let label = id.clone().unwrap_or_else(|| format!("#{index}"));
        if let Some(kind) = item.get("kind").and_then(Value::as_str) {
            if !KINDS.contains(&kind) {
                return Err(schema_error(&label, format!("unknown kind {kind:?}")));
            }
        }
        let entry: LedgerEntry = serde_json::from_value(item.clone())
            .map_err(|e| parse_error(Some(&label), format!("entry at index {index}: {e}")))?;
        let op = entry.inputs.get("op").and_then(Value::as_str);
        match op {
            Some(op) if KNOWN_OPS.contains(&op) => {}
            Some(op) => return Err(schema_error(&entry.id, format!("unknown op {op:?}"))),
            None => return Err(schema_error(&entry.id, "inputs.op must be a string")),
        }
        if !seen.insert(entry.id.clone()) {
            return Err(schema_error(&entry.id, "duplicate id"));
        }
        entries.push(entry);
    }
    Ok(Ledger { version, entries })
}

pub fn bundled_ledger() -> Ledger {
    parse_ledger(BUNDLED_LEDGER).expect("bundled ledger is valid")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntryReport {
    pub id: String,
    pub status: Status,
    pub citation: String,
    pub expected: Value,
    pub computed: Value,
    pub micros: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub version: u64,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub entries: Vec<EntryReport>,
}

impl VerificationReport {
    pub fn from_entries(mut entries: Vec<EntryReport>) -> Self {
        entries.sort_by(|a, b| a.id.cmp(&b.id));
        let count = |s| entries.iter().filter(|e| e.status == s).count();
        Self {
            version: LEDGER_VERSION,
            passed: count(Status::Pass),
            failed: count(Status::Fail),
            skipped: count(Status::Skipped),
            entries,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    pub parallel: bool,
    /// When false every `micros` is 0, so reports are byte-reproducible.
    pub record_timings: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            parallel: true,
            record_timings: true,
        }
    }
}

fn run_entry(entry: &LedgerEntry, opts: RunOptions) -> EntryReport {
    let start = Instant::now();
    let outcome = ops::evaluate(entry);
    let micros = if opts.record_timings {
        start.elapsed().as_micros() as u64
    } else {
        0
    };
    let (status, computed) = match outcome {
        Err(e) => (Status::Fail, serde_json::json!({ "error": e.to_string() })),
        Ok(o) if o.bounds_only => (Status::Skipped, o.value),
        Ok(o) => {
            let ok = ops::matches(&entry.expected, &o);
            (if ok { Status::Pass } else { Status::Fail }, o.value)
        }
    };
    EntryReport {
        id: entry.id.clone(),
        status,
        citation: entry.citation.clone(),
        expected: entry.expected.clone(),
        computed,
        micros,
    }
}

pub fn run_entries(ledger: &Ledger, opts: RunOptions) -> VerificationReport {
    let reports = if opts.parallel {
        ledger
            .entries
            .par_iter()
            .map(|e| run_entry(e, opts))
            .collect()
    } else {
        ledger.entries.iter().map(|e| run_entry(e, opts)).collect()
    };
    VerificationReport::from_entries(reports)
}

/// `run_ledger`: parse the file at `path` and evaluate every entry.
pub fn run_ledger(path: &Path, opts: RunOptions) -> Result<VerificationReport> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Ok(run_entries(&parse_ledger(&text)?, opts))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

/// `emit_report`: deterministic bytes for a report.
pub fn emit_report(r: &VerificationReport, format: ReportFormat) -> Vec<u8> {
    match format {
        ReportFormat::Json => {
            let mut out = serde_json::to_vec_pretty(r).expect("report serializes");
            out.push(b'\n');
            out
        }
        ReportFormat::Text => text_report(r).into_bytes(),
    }
}

fn text_report(r: &VerificationReport) -> String {
    let mut entries: Vec<&EntryReport> = r.entries.iter().collect();
    entries.sort_by(|a, b| a.id.cmp(&b.id));
    let width = entries.iter().map(|e| e.id.len()).max().unwrap_or(0).max(2);
    let mut out = format!(
        "{:<width$}  {:<7}  {:>8}  CITATION\n",
        "ID", "STATUS", "MICROS"
    );
    for e in entries {
        let status = match e.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skipped => "skipped",
        };
        out.push_str(&format!(
            "{:<width$}  {:<7}  {:>8}  {}\n",
            e.id, status, e.micros, e.citation
        ));
        if e.status == Status::Fail {
            out.push_str(&format!("{:<width$}    expected: {}\n", "", e.expected));
            out.push_str(&format!("{:<width$}    computed: {}\n", "", e.computed));
        }
    }
    out.push_str(&format!(
        "passed {}, failed {}, skipped {} (bounds only)\n",
        r.passed, r.failed, r.skipped
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ledger(entries: &str) -> String {
        format!(r#"{{"version": 1, "entries": [{entries}]}}"#)
    }

    const XI_CUBED: &str = r#"{"id": "a", "description": "d", "citation": "c", "kind": "chow-identity",
        "inputs": {"op": "chow-eval", "c": [0, 1, 2, 3, 4], "expr": "xi^3"},
        "expected": [{"degree": 4}, {"degree": 3}, {"degree": 2}, {"degree": 1}, {"degree": 0}]}"#;

    #[test]
    fn passing_entry() {
        let r = run_entries(
            &parse_ledger(&ledger(XI_CUBED)).unwrap(),
            RunOptions::default(),
        );
        assert_eq!((r.passed, r.failed, r.skipped), (1, 0, 0));
    }

    #[test]
    fn tampered_entry_fails() {
        let text = ledger(
            r#"{"id": "t", "description": "d", "citation": "c", "kind": "chow-identity",
            "inputs": {"op": "chow-eval", "c": 1, "expr": "xi^2*f"}, "expected": {"degree": 3}}"#,
        );
        let r = run_entries(&parse_ledger(&text).unwrap(), RunOptions::default());
        assert_eq!(r.failed, 1);
        assert_eq!(r.entries[0].computed["degree"], serde_json::json!(2));
    }

    #[test]
    fn schema_errors() {
        let bad_kind = ledger(
            r#"{"id": "k", "description": "d", "citation": "c", "kind": "guess",
            "inputs": {"op": "chow-eval"}, "expected": {}}"#,
        );
        assert!(
            matches!(parse_ledger(&bad_kind), Err(Error::LedgerSchema { entry, .. }) if entry == "k")
        );
        let dup = ledger(&format!("{XI_CUBED}, {XI_CUBED}"));
        assert!(matches!(
            parse_ledger(&dup),
            Err(Error::LedgerSchema { .. })
        ));
        let missing = ledger(r#"{"id": "m", "kind": "enumeration"}"#);
        assert!(
            matches!(parse_ledger(&missing), Err(Error::LedgerParse { entry: Some(e), .. }) if e == "m")
        );
        assert!(matches!(
            parse_ledger("{"),
            Err(Error::LedgerParse { entry: None, .. })
        ));
        assert!(parse_ledger(r#"{"version": 2, "entries": []}"#).is_err());
    }

    #[test]
    fn empty_report() {
        let r = VerificationReport::from_entries(vec![]);
        let json: Value = serde_json::from_slice(&emit_report(&r, ReportFormat::Json)).unwrap();
        assert_eq!(json["passed"], 0);
        assert_eq!(json["entries"], serde_json::json!([]));
        let keys: Vec<&String> = json.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["version", "passed", "failed", "skipped", "entries"]);
    }

    #[test]
    fn text_table_sorted() {
        let r = VerificationReport::from_entries(vec![
            EntryReport {
                id: "b".into(),
                status: Status::Pass,
                citation: "x".into(),
                expected: Value::Null,
                computed: Value::Null,
                micros: 0,
            },
            EntryReport {
                id: "a".into(),
                status: Status::Skipped,
                citation: "y".into(),
                expected: Value::Null,
                computed: Value::Null,
                micros: 0,
            },
        ]);
        let text = String::from_utf8(emit_report(&r, ReportFormat::Text)).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[1].starts_with("a ") && lines[2].starts_with("b "));
        assert!(lines[3].contains("skipped 1"));
    }
}
