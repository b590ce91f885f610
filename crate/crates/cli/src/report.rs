//! The report a verb produces: status, verb-specific payload, and enough
//! provenance to pin down every convention the numbers depend on.
//!
//! Serialization is deterministic — object keys are emitted in sorted
//! order and nothing time- or path-dependent is recorded — so identical
//! inputs yield byte-identical reports.

use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use serde_json::{json, Map, Value};

use gerbedual::descent::Violation;
use gerbedual::DescentStatus;

pub const TOOL: &str = concat!("gerbedual ", env!("CARGO_PKG_VERSION"));

/// Conventions that the reported values depend on, recorded so that two
/// reports are comparable only when these agree.
const CONVENTIONS: &[(&str, &str)] = &[
    ("inner_automorphism", "x -> b^-1 x b"),
    (
        "transition_composition",
        "alpha_jk o alpha_ij = alpha_ik o inner(beta_ijk)",
    ),
    (
        "row_order",
        "degree ascending, then value rows descending lexicographically",
    ),
    ("tau_normalization", "first nonzero row-major entry scaled to 1"),
    (
        "section",
        "least total-group index per coset; quotient identity maps to the group identity",
    ),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Vacuous,
}

impl Status {
    pub fn from_descent(status: DescentStatus) -> Self {
        match status {
            DescentStatus::Pass => Status::Pass,
            DescentStatus::Fail => Status::Fail,
            DescentStatus::Vacuous => Status::Vacuous,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Vacuous => "vacuous",
        }
    }

    pub fn exit_code(self) -> u8 {
        match self {
            Status::Pass | Status::Vacuous => 0,
            Status::Fail => 1,
        }
    }
}

pub struct Report {
    pub verb: &'static str,
    pub status: Status,
    pub payload: Value,
    /// Prime used for the character-table computation, when one was run.
    pub dixon_prime: Option<u64>,
    /// Verb-specific lines for the human summary.
    pub summary: Vec<String>,
}

impl Report {
    pub fn to_value(&self) -> Value {
        let mut provenance = Map::new();
        provenance.insert("tool".into(), json!(TOOL));
        if let Some(p) = self.dixon_prime {
            provenance.insert("dixon_prime".into(), json!(p));
        }
        let conventions: Map<String, Value> = CONVENTIONS
            .iter()
            .map(|(key, text)| ((*key).to_string(), json!(text)))
            .collect();
        provenance.insert("conventions".into(), Value::Object(conventions));
        json!({
            "verb": self.verb,
            "status": self.status.as_str(),
            "payload": self.payload,
            "provenance": Value::Object(provenance),
        })
    }

    pub fn to_json_bytes(&self) -> Vec<u8> {
        let mut text =
            serde_json::to_string_pretty(&self.to_value()).expect("report serialization");
        text.push('\n');
        text.into_bytes()
    }

    /// Human-readable rendering: status line, verb-specific table,
    /// violations sorted by index tuple, provenance footer.
    pub fn render_summary(&self) -> String {
        let mut out = format!("{}: {}\n", self.verb, self.status.as_str());
        for line in &self.summary {
            out.push_str("  ");
            out.push_str(line);
            out.push('\n');
        }
        if let Some(violations) = self.payload.get("violations").and_then(Value::as_array) {
            if !violations.is_empty() {
                out.push_str("  violations:\n");
                for violation in violations {
                    let check = violation
                        .get("check")
                        .and_then(Value::as_str)
                        .unwrap_or("?");
                    let indices = violation.get("indices").map(Value::to_string);
                    let detail = violation
                        .get("detail")
                        .and_then(Value::as_str)
                        .unwrap_or("");
                    out.push_str(&format!(
                        "    {} at {}: {}\n",
                        check,
                        indices.as_deref().unwrap_or("?"),
                        detail
                    ));
                }
            }
        }
        out.push_str(&format!("tool: {TOOL}"));
        if let Some(p) = self.dixon_prime {
            out.push_str(&format!(" (prime {p})"));
        }
        out.push('\n');
        out
    }
}

/// Violations as JSON, sorted by index tuple then check name so the fail
/// rendering has a stable order.
pub fn violations_json(violations: &[Violation]) -> Value {
    let mut sorted: Vec<&Violation> = violations.iter().collect();
    sorted.sort_by(|a, b| a.indices.cmp(&b.indices).then(a.check.cmp(b.check)));
    Value::Array(
        sorted
            .iter()
            .map(|v| {
                json!({
                    "check": v.check,
                    "indices": v.indices,
                    "detail": v.detail,
                })
            })
            .collect(),
    )
}

/// Write via a temporary file in the target directory and rename, so a
/// report path never holds a half-written file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(parent) if !parent.as_os_str().is_empty() => parent,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("creating a temporary file in {}", dir.display()))?;
    tmp.write_all(bytes).context("writing the report")?;
    tmp.persist(path)
        .with_context(|| format!("moving the report into {}", path.display()))?;
    Ok(())
}
