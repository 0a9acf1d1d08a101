use std::collections::BTreeMap;
use std::fmt::Write;
use std::time::Duration;

use fqg_core::HopfData;
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, Serialize)]
pub struct ModelInfo {
    pub name: String,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub check: String,
    /// Published statement this verdict reproduces.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub claim: Option<&'static str>,
    pub passed: bool,
    pub summary: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<Value>,
}

impl CheckResult {
    pub fn new(check: &str, claim: Option<&'static str>, passed: bool, summary: impl Into<String>) -> Self {
        CheckResult { check: check.into(), claim, passed, summary: summary.into(), witnesses: Vec::new(), data: None }
    }

    pub fn with_data(mut self, data: Value) -> Self {
        self.data = Some(data);
        self
    }
}

/// Timings are kept in their own map so the rest of the report is
/// reproducible byte for byte.
#[derive(Debug)]
pub struct RunReport {
    pub command: Vec<String>,
    pub model: Option<ModelInfo>,
    pub checks: Vec<CheckResult>,
    pub notes: Vec<String>,
    pub timing_ms: BTreeMap<String, f64>,
}

#[derive(Serialize)]
struct Out<'a> {
    command: &'a [String],
    version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    model: &'a Option<ModelInfo>,
    passed: bool,
    checks: &'a [CheckResult],
    #[serde(skip_serializing_if = "<[String]>::is_empty")]
    notes: &'a [String],
    timing_ms: &'a BTreeMap<String, f64>,
}

impl Serialize for RunReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Out {
            command: &self.command,
            version: env!("CARGO_PKG_VERSION"),
            model: &self.model,
            passed: self.passed(),
            checks: &self.checks,
            notes: &self.notes,
            timing_ms: &self.timing_ms,
        }
        .serialize(s)
    }
}

impl RunReport {
    pub fn new(command: Vec<String>, h: Option<&HopfData>) -> Self {
        RunReport {
            command,
            model: h.map(|h| ModelInfo { name: h.name().into(), dim: h.dim() }),
            checks: Vec::new(),
            notes: Vec::new(),
            timing_ms: BTreeMap::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn timing(&mut self, key: &str, d: Duration) {
        self.timing_ms.insert(key.into(), (d.as_secs_f64() * 1e6).round() / 1e3);
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn render_table(&self) -> String {
        let mut out = String::new();
        if let Some(m) = &self.model {
            let _ = writeln!(out, "model: {} (dim {})", m.name, m.dim);
        }
        let width = self.checks.iter().map(|c| c.check.chars().count()).max().unwrap_or(0);
        for c in &self.checks {
            let verdict = if c.passed { "PASS" } else { "FAIL" };
            let _ = write!(out, "{verdict}  {:<width$}  {}", c.check, c.summary);
            if let Some(claim) = c.claim {
                let _ = write!(out, "  [{claim}]");
            }
            out.push('\n');
            for w in &c.witnesses {
                let _ = writeln!(out, "      {w}");
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        let passed = self.checks.iter().filter(|c| c.passed).count();
        let _ = writeln!(out, "{} ({passed}/{} passed)", if self.passed() { "PASS" } else { "FAIL" }, self.checks.len());
        if !self.timing_ms.is_empty() {
            let times: Vec<String> = self.timing_ms.iter().map(|(k, v)| format!("{k} {v:.1} ms")).collect();
            let _ = writeln!(out, "timing: {}", times.join(", "));
        }
        out
    }
}
