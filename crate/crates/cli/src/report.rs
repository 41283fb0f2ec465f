use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use crate::suites::Suite;
use crate::CliError;

/// Collects CSV rows, JSON records and the first failing record of a suite.
#[derive(Debug)]
pub struct Recorder {
    header: &'static str,
    rows: Vec<String>,
    records: Vec<Value>,
    first_failure: Option<String>,
    checks: usize,
    failures: usize,
}

impl Recorder {
    pub fn new(header: &'static str) -> Self {
        Self {
            header,
            rows: Vec::new(),
            records: Vec::new(),
            first_failure: None,
            checks: 0,
            failures: 0,
        }
    }

    /// Adds one record; `row` is its CSV line and `label` names it on failure.
    pub fn push<R: Serialize>(
        &mut self,
        record: &R,
        row: String,
        pass: bool,
        label: impl FnOnce() -> String,
    ) {
        self.rows.push(row);
        self.records
            .push(serde_json::to_value(record).expect("records serialize"));
        self.check(pass, label);
    }

    /// Counts an assertion that has no CSV row of its own.
    pub fn check(&mut self, pass: bool, label: impl FnOnce() -> String) {
        self.checks += 1;
        if !pass {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(label());
            }
        }
    }

    pub fn fail(&mut self, label: String) {
        self.check(false, || label);
    }

    pub fn finish(self, suite: Suite, seed: u64, summary: Value, elapsed_ms: f64) -> SuiteOutcome {
        let mut csv = String::with_capacity(64 * (self.rows.len() + 1));
        csv.push_str(self.header);
        csv.push('\n');
        for row in &self.rows {
            csv.push_str(row);
            csv.push('\n');
        }
        let passed = self.first_failure.is_none();
        let json = json!({
            "suite": suite.name(),
            "seed": seed,
            "passed": passed,
            "checks": self.checks,
            "failures": self.failures,
            "first_failure": self.first_failure,
            "elapsed_ms": elapsed_ms,
            "summary": summary,
            "records": self.records,
        });
        SuiteOutcome {
            suite,
            csv,
            json,
            first_failure: self.first_failure,
            checks: self.checks,
            failures: self.failures,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub csv: String,
    pub json: Value,
    pub first_failure: Option<String>,
    pub checks: usize,
    pub failures: usize,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }

    pub fn write(&self, dir: &Path) -> Result<(), CliError> {
        let json = serde_json::to_string_pretty(&self.json).expect("report serializes") + "\n";
        write_atomic(
            dir,
            &format!("{}.csv", self.suite.name()),
            self.csv.as_bytes(),
        )?;
        write_atomic(dir, &format!("{}.json", self.suite.name()), json.as_bytes())
    }
}

/// Writes through a temporary file in `dir` and renames it into place.
pub fn write_atomic(dir: &Path, name: &str, bytes: &[u8]) -> Result<(), CliError> {
    let target = dir.join(name);
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", target.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(bytes).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(&target).map_err(|e| io(e.error))?;
    Ok(())
}
