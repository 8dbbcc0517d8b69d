//! Verification report model and its JSON / text renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub k: Vec<usize>,
    /// `"(p,q)"`, or `"(2k,0)"` when the default per-k signature is used.
    pub signature: String,
    /// `"standard"` or the basis rows as Gaussian-rational strings.
    pub lattice: serde_json::Value,
    pub seed: u64,
    pub version: String,
    pub representation: String,
    pub samples: usize,
    pub cap: u64,
}

/// A failed assertion with enough data to replay it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub inputs: BTreeMap<String, String>,
    pub expected: String,
    pub actual: String,
}

impl Failure {
    pub fn new<'a>(
        inputs: impl IntoIterator<Item = (&'a str, String)>,
        expected: impl Into<String>,
        actual: impl Into<String>,
    ) -> Self {
        Self {
            inputs: inputs.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
            expected: expected.into(),
            actual: actual.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub name: String,
    pub k: usize,
    /// Name of the statement the suite exercises.
    pub statement: String,
    pub passed: bool,
    /// Informational suites report expected failures and never fail a run.
    pub informational: bool,
    pub skipped: Option<String>,
    pub checks: u64,
    pub failures: Vec<Failure>,
    /// Wall time, recorded only when timings are requested.
    pub ms: Option<u64>,
}

impl SuiteResult {
    pub fn new(name: &str, k: usize, statement: &str) -> Self {
        Self {
            name: name.to_string(),
            k,
            statement: statement.to_string(),
            passed: true,
            informational: false,
            skipped: None,
            checks: 0,
            failures: Vec::new(),
            ms: None,
        }
    }

    pub fn skip(mut self, reason: impl Into<String>) -> Self {
        self.skipped = Some(reason.into());
        self
    }

    /// Records one check; a failing check is kept with its replay data.
    pub fn check(&mut self, ok: bool, failure: impl FnOnce() -> Failure) {
        self.checks += 1;
        if !ok {
            self.passed = false;
            self.failures.push(failure());
        }
    }

    pub fn fails_run(&self) -> bool {
        !self.passed && !self.informational && self.skipped.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexEntry {
    pub k: usize,
    pub smith_divisors: Vec<String>,
    /// Decimal string, or `"infinite"` when the image has lower rank.
    pub index: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexSection {
    /// Entry for the smallest `k` run, repeated at top level.
    pub k: usize,
    pub smith_divisors: Vec<String>,
    pub index: String,
    pub by_k: Vec<IndexEntry>,
}

impl IndexSection {
    pub fn from_entries(by_k: Vec<IndexEntry>) -> Option<Self> {
        let first = by_k.first()?.clone();
        Some(Self { k: first.k, smith_divisors: first.smith_divisors, index: first.index, by_k })
    }

    pub fn has_gap(&self) -> bool {
        self.by_k.iter().any(|e| e.index != "1")
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub meta: Meta,
    pub suites: Vec<SuiteResult>,
    pub index: Option<IndexSection>,
    pub warnings: Vec<String>,
}

impl VerificationReport {
    pub fn failed_suites(&self) -> impl Iterator<Item = &SuiteResult> {
        self.suites.iter().filter(|s| s.fails_run())
    }

    /// Run outcome: no suite failed and, under `strict`, no index gap.
    pub fn success(&self, strict: bool) -> bool {
        self.failed_suites().next().is_none() && !(strict && self.index.as_ref().is_some_and(IndexSection::has_gap))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

pub fn emit_report(r: &VerificationReport, format: Format) -> Vec<u8> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(r).expect("report serializes");
            out.push(b'\n');
            out
        }
        Format::Text => render_text(r).into_bytes(),
    }
}

fn render_text(r: &VerificationReport) -> String {
    let mut s = String::new();
    let ks: Vec<String> = r.meta.k.iter().map(ToString::to_string).collect();
    let _ = writeln!(
        s,
        "k = {}  signature {}  seed {}  version {}",
        ks.join(","),
        r.meta.signature,
        r.meta.seed,
        r.meta.version
    );
    for suite in &r.suites {
        let status = match (&suite.skipped, suite.passed, suite.informational) {
            (Some(_), _, _) => "SKIP",
            (None, true, _) => "PASS",
            (None, false, true) => "INFO",
            (None, false, false) => "FAIL",
        };
        let _ = write!(s, "[{status}] k={} {:<32} {:>7} checks", suite.k, suite.name, suite.checks);
        if let Some(ms) = suite.ms {
            let _ = write!(s, "  {ms} ms");
        }
        if let Some(reason) = &suite.skipped {
            let _ = write!(s, "  ({reason})");
        }
        s.push('\n');
        for f in suite.failures.iter().take(3) {
            let inputs: Vec<String> = f.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(s, "    {}: expected {}, got {}", inputs.join(" "), f.expected, f.actual);
        }
        if suite.failures.len() > 3 {
            let _ = writeln!(s, "    ... {} more", suite.failures.len() - 3);
        }
    }
    if let Some(idx) = &r.index {
        for e in &idx.by_k {
            let _ = writeln!(s, "subring index k={}: {} (divisors {})", e.k, e.index, e.smith_divisors.join(" "));
        }
    }
    for w in &r.warnings {
        let _ = writeln!(s, "warning: {w}");
    }
    let failed = r.failed_suites().count();
    let _ = writeln!(
        s,
        "{}",
        if failed == 0 { "all suites passed".to_string() } else { format!("{failed} suite(s) failed") }
    );
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_is_valid_json() {
        let bytes = emit_report(&VerificationReport::default(), Format::Json);
        let v: serde_json::Value = serde_json::from_slice(&bytes).unwrap();
        assert_eq!(v["suites"], serde_json::json!([]));
        assert!(v["meta"].is_object());
        assert!(v["index"].is_null());
    }

    #[test]
    fn schema_field_names() {
        let mut suite = SuiteResult::new("demo", 1, "demo statement");
        suite.check(false, || Failure::new([("point", "1/4, 0".to_string())], "0", "1/2"));
        let r = VerificationReport {
            suites: vec![suite],
            index: IndexSection::from_entries(vec![IndexEntry {
                k: 1,
                smith_divisors: vec!["1".into()],
                index: "16".into(),
            }]),
            ..Default::default()
        };
        let v: serde_json::Value = serde_json::from_slice(&emit_report(&r, Format::Json)).unwrap();
        for key in ["k", "signature", "lattice", "seed", "version"] {
            assert!(v["meta"].get(key).is_some(), "{key}");
        }
        for key in ["name", "passed", "checks", "failures", "ms"] {
            assert!(v["suites"][0].get(key).is_some(), "{key}");
        }
        assert_eq!(v["suites"][0]["failures"][0]["inputs"]["point"], "1/4, 0");
        assert_eq!(v["index"]["index"], "16");
        assert!(!r.success(false));
        let back: VerificationReport = serde_json::from_slice(&emit_report(&r, Format::Json)).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn informational_and_skipped_do_not_fail() {
        let mut info = SuiteResult::new("info", 1, "");
        info.informational = true;
        info.check(false, || Failure::new([], "", ""));
        let mut skipped = SuiteResult::new("skip", 1, "").skip("reason");
        skipped.passed = false;
        let r = VerificationReport { suites: vec![info, skipped], ..Default::default() };
        assert!(r.success(true));
        let text = String::from_utf8(emit_report(&r, Format::Text)).unwrap();
        assert!(text.contains("[INFO]") && text.contains("[SKIP]"));
    }

    #[test]
    fn strict_promotes_index_gap() {
        let r = VerificationReport {
            index: IndexSection::from_entries(vec![IndexEntry { k: 1, smith_divisors: vec![], index: "16".into() }]),
            ..Default::default()
        };
        assert!(r.success(false));
        assert!(!r.success(true));
    }
}
