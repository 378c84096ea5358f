//! Machine-readable suite reports: JSON with stable field ordering, CSV
//! with fixed headers, and a human text summary. Re-running a suite with
//! the same configuration and `--no-timestamp` yields byte-identical
//! output.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

/// Outcome class of one check. `Flagged` is reserved for documented
/// discrepancies in the reference formulas: the engine's two routes agree,
/// the printed form does not, and the suite stays green while preserving
/// the exact difference.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Flagged,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Pass => write!(f, "pass"),
            Status::Fail => write!(f, "fail"),
            Status::Flagged => write!(f, "flagged"),
        }
    }
}

/// Residual of a check: exact checks carry the rational as a string
/// (`"0"`, `"3/16"`), numeric checks a float.
#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum Residual {
    Exact(String),
    Float(f64),
}

impl Residual {
    pub fn exact_zero() -> Self {
        Residual::Exact("0".into())
    }

    pub fn is_within(&self, tol: &Tolerance) -> bool {
        match (self, tol) {
            (Residual::Exact(s), Tolerance::Exact) => s == "0",
            (Residual::Float(v), Tolerance::Abs(t)) => v.is_finite() && v.abs() <= *t,
            // an exact zero satisfies any numeric tolerance
            (Residual::Exact(s), Tolerance::Abs(_)) => s == "0",
            // a float cannot witness an exact-zero requirement
            (Residual::Float(_), Tolerance::Exact) => false,
        }
    }
}

impl fmt::Display for Residual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Residual::Exact(s) => write!(f, "{s}"),
            Residual::Float(v) => write!(f, "{v:e}"),
        }
    }
}

/// Tolerance of a check: literal zero for exact-arithmetic checks, an
/// absolute bound otherwise.
#[derive(Clone, Copy, Debug)]
pub enum Tolerance {
    Exact,
    Abs(f64),
}

impl Serialize for Tolerance {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Tolerance::Exact => s.serialize_str("exact"),
            Tolerance::Abs(v) => s.serialize_f64(*v),
        }
    }
}

impl fmt::Display for Tolerance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tolerance::Exact => write!(f, "exact"),
            Tolerance::Abs(v) => write!(f, "{v:e}"),
        }
    }
}

/// One executed check.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub paper_ref: String,
    pub status: Status,
    pub residual: Residual,
    pub tolerance: Tolerance,
    pub runtime_ms: u64,
    pub details: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub flagged: usize,
}

/// A full suite report; field order is the stable JSON contract.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
    pub config: BTreeMap<String, String>,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl Report {
    pub fn new(suite: &str, config: BTreeMap<String, String>, checks: Vec<CheckRecord>) -> Self {
        let mut summary = Summary::default();
        for c in &checks {
            match c.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Flagged => summary.flagged += 1,
            }
        }
        Self {
            suite: suite.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: None,
            config,
            checks,
            summary,
        }
    }

    pub fn any_failed(&self) -> bool {
        self.summary.fail > 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("suite,name,paper_ref,status,residual,tolerance,runtime_ms,details\n");
        for c in &self.checks {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                csv_field(&self.suite),
                csv_field(&c.name),
                csv_field(&c.paper_ref),
                c.status,
                csv_field(&c.residual.to_string()),
                csv_field(&c.tolerance.to_string()),
                c.runtime_ms,
                csv_field(&c.details),
            ));
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("suite {} (engine {})\n", self.suite, self.version);
        for c in &self.checks {
            out.push_str(&format!(
                "  [{}] {} ({}) residual {} tol {}{}\n",
                c.status.to_string().to_uppercase(),
                c.name,
                c.paper_ref,
                c.residual,
                c.tolerance,
                if c.details.is_empty() { String::new() } else { format!(" -- {}", c.details) },
            ));
        }
        out.push_str(&format!(
            "summary: {} pass, {} fail, {} flagged\n",
            self.summary.pass, self.summary.fail, self.summary.flagged
        ));
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
