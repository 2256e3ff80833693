use std::fs;
use std::path::Path;

use serde_json::Value;

use crate::CliError;

/// Verdict, JSON report and human summary of one command.
#[derive(Debug)]
pub struct Outcome {
    pub passed: bool,
    pub report: Value,
    /// Lines always printed.
    pub summary: Vec<String>,
    /// Lines printed with `-v`.
    pub details: Vec<String>,
}

impl Outcome {
    pub fn new(passed: bool, report: Value) -> Self {
        Outcome {
            passed,
            report,
            summary: Vec::new(),
            details: Vec::new(),
        }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.summary.push(s.into());
    }

    pub fn detail(&mut self, s: impl Into<String>) {
        self.details.push(s.into());
    }
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn render(report: &Value) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports are valid JSON");
    s.push('\n');
    s
}

pub fn emit(
    outcome: &Outcome,
    out: Option<&Path>,
    json_only: bool,
    verbose: u8,
) -> Result<(), CliError> {
    let json = render(&outcome.report);
    if let Some(path) = out {
        fs::write(path, &json).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
    }
    if json_only {
        print!("{json}");
        return Ok(());
    }
    for line in &outcome.summary {
        println!("{line}");
    }
    if verbose > 0 {
        for line in &outcome.details {
            println!("  {line}");
        }
    }
    println!(
        "{}",
        if outcome.passed {
            "result: PASS"
        } else {
            "result: FAIL"
        }
    );
    Ok(())
}
