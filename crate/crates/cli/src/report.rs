//! Check reports and their text/JSON rendering.

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const SCHEMA: &str = "tidlab/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Backend {
    Numeric,
    Symbolic,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub backend: Backend,
    pub parameters: Value,
    /// Largest relative residual over the instances (numeric checks).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    /// SHA-256 of the word-coefficient table (symbolic checks).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub digest: Option<String>,
    pub passed: bool,
    pub summary: String,
    pub details: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl CheckReport {
    pub fn numeric(check: &str, parameters: Value, residual: f64, tolerance: f64, summary: String, details: Value) -> Self {
        CheckReport {
            check: check.to_string(),
            backend: Backend::Numeric,
            parameters,
            residual: Some(residual),
            tolerance: Some(tolerance),
            digest: None,
            passed: residual <= tolerance,
            summary,
            details,
            elapsed_ms: None,
        }
    }

    pub fn symbolic(check: &str, parameters: Value, table: &[(String, String)], passed: bool, summary: String, details: Value) -> Self {
        CheckReport {
            check: check.to_string(),
            backend: Backend::Symbolic,
            parameters,
            residual: None,
            tolerance: None,
            digest: Some(table_digest(table)),
            passed,
            summary,
            details,
            elapsed_ms: None,
        }
    }

    pub fn text_line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        let backend = match self.backend {
            Backend::Numeric => "numeric",
            Backend::Symbolic => "symbolic",
        };
        let mut line = format!("{status} {} [{backend}] {}", self.check, self.summary);
        if let Some(ms) = self.elapsed_ms {
            line.push_str(&format!(" ({ms:.1} ms)"));
        }
        line
    }
}

/// Digest of `word<TAB>coefficient` lines in the given order.
pub fn table_digest(table: &[(String, String)]) -> String {
    let mut h = Sha256::new();
    for (w, c) in table {
        h.update(w.as_bytes());
        h.update(b"\t");
        h.update(c.as_bytes());
        h.update(b"\n");
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
