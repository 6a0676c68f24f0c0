//! Machine-readable reports: one record per check, JSON and CSV renderings
//! with deterministic bytes for a fixed config and seed.

use serde::Serialize;

use crate::config::SuiteConfig;

/// Anchor tag for checks that verify artifact plumbing rather than a
/// displayed identity.
pub const PLUMBING: &str = "plumbing";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Cmp {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
}

impl std::fmt::Display for Cmp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Cmp::Le => write!(f, "<="),
            Cmp::Ge => write!(f, ">="),
        }
    }
}

/// One executed check: the identity it verifies (or `plumbing`), the
/// parameters, the measured value, and the bound it is held to.
#[derive(Debug, Clone, Serialize)]
pub struct Record {
    pub id: String,
    pub anchor: String,
    pub params: String,
    pub value: f64,
    pub bound: f64,
    pub cmp: Cmp,
    pub pass: bool,
}

impl Record {
    pub fn le(id: &str, anchor: &str, params: String, value: f64, bound: f64) -> Self {
        Self {
            id: id.into(),
            anchor: anchor.into(),
            params,
            value,
            bound,
            cmp: Cmp::Le,
            pass: value <= bound,
        }
    }

    pub fn ge(id: &str, anchor: &str, params: String, value: f64, bound: f64) -> Self {
        Self {
            id: id.into(),
            anchor: anchor.into(),
            params,
            value,
            bound,
            cmp: Cmp::Ge,
            pass: value >= bound,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: String,
    pub version: String,
    pub config: SuiteConfig,
    pub records: Vec<Record>,
    pub summary: Summary,
}

impl Report {
    pub fn new(suite: &str, config: &SuiteConfig, records: Vec<Record>) -> Self {
        let passed = records.iter().filter(|r| r.pass).count();
        let summary = Summary {
            total: records.len(),
            passed,
            failed: records.len() - passed,
        };
        Self {
            suite: suite.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            config: config.clone(),
            records,
            summary,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> anyhow::Result<String> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        Ok(text)
    }

    /// One record per row, RFC-style quoting via the csv writer.
    pub fn to_csv(&self) -> anyhow::Result<String> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record([
            "suite", "id", "anchor", "params", "value", "bound", "cmp", "pass",
        ])?;
        for r in &self.records {
            writer.write_record([
                self.suite.as_str(),
                r.id.as_str(),
                r.anchor.as_str(),
                r.params.as_str(),
                &format_float(r.value),
                &format_float(r.bound),
                &r.cmp.to_string(),
                if r.pass { "true" } else { "false" },
            ])?;
        }
        let bytes = writer.into_inner()?;
        Ok(String::from_utf8(bytes)?)
    }
}

/// Shortest-roundtrip float formatting, shared by CSV and tables.
pub fn format_float(x: f64) -> String {
    let mut buffer = ryu_like(x);
    if !buffer.contains('.') && !buffer.contains('e') && !buffer.contains("inf") {
        buffer.push_str(".0");
    }
    buffer
}

fn ryu_like(x: f64) -> String {
    // `{}` on f64 is shortest-roundtrip in Rust.
    format!("{x}")
}
