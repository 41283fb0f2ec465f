//! Config-driven runner for the verification suites of `bergman-core`.
//!
//! Each suite writes `<suite>.csv` (deterministic, plot-ready rows) and
//! `<suite>.json` (the same records plus summaries and timings).

pub mod config;
pub mod report;
pub mod suites;

use std::path::Path;

pub use config::Config;
pub use report::SuiteOutcome;
pub use suites::Suite;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn message(&self) -> String {
        match self {
            CliError::Config(m) | CliError::Io(m) => m.clone(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        2
    }
}

/// Runs the selected suites (all of them in parallel for `None`), writes
/// their reports into `out`, and returns the outcomes in suite order.
pub fn run(
    selection: Option<Suite>,
    config: &Config,
    out: &Path,
) -> Result<Vec<SuiteOutcome>, CliError> {
    std::fs::create_dir_all(out)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", out.display())))?;
    let outcomes = match selection {
        Some(suite) => vec![suite.run(config)?],
        None => std::thread::scope(|s| {
            let handles: Vec<_> = Suite::ALL
                .iter()
                .map(|suite| s.spawn(move || suite.run(config)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("suite thread panicked"))
                .collect::<Result<Vec<_>, _>>()
        })?,
    };
    for outcome in &outcomes {
        outcome.write(out)?;
    }
    Ok(outcomes)
}

/// The first failing record across `outcomes`, in suite order.
pub fn first_failure(outcomes: &[SuiteOutcome]) -> Option<String> {
    outcomes.iter().find_map(|o| {
        o.first_failure
            .as_ref()
            .map(|f| format!("{}: {f}", o.suite.name()))
    })
}
