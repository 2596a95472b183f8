use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub check: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Structured result of one command. Contains nothing that varies between
/// runs on the same input unless timing is requested.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub model_digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub operator: Option<String>,
    pub passed: bool,
    pub verdicts: Vec<Verdict>,
    pub results: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
    /// Lines for the human-readable rendering.
    #[serde(skip)]
    pub summary: Vec<String>,
}

impl Report {
    pub fn new(command: &str, model_digest: String) -> Self {
        Report {
            command: command.to_string(),
            model_digest,
            operator: None,
            passed: true,
            verdicts: Vec::new(),
            results: Value::Null,
            timing_ms: None,
            summary: Vec::new(),
        }
    }

    pub fn check(&mut self, check: impl Into<String>, passed: bool, detail: Option<String>) {
        self.passed &= passed;
        self.verdicts.push(Verdict {
            check: check.into(),
            passed,
            detail,
        });
    }

    pub fn line(&mut self, line: impl Into<String>) {
        self.summary.push(line.into());
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        super::json::to_string(self)
    }

    pub fn human(&self) -> String {
        let mut out = String::new();
        let _ = write!(
            out,
            "ttg {}  model {}",
            self.command,
            &self.model_digest[..12.min(self.model_digest.len())]
        );
        if let Some(op) = &self.operator {
            let _ = write!(out, "  operator {op}");
        }
        out.push('\n');
        for line in &self.summary {
            let _ = writeln!(out, "  {line}");
        }
        for v in &self.verdicts {
            let mark = if v.passed { "PASS" } else { "FAIL" };
            match &v.detail {
                Some(d) => {
                    let _ = writeln!(out, "{mark} {}: {d}", v.check);
                }
                None => {
                    let _ = writeln!(out, "{mark} {}", v.check);
                }
            }
        }
        let failed = self.verdicts.iter().filter(|v| !v.passed).count();
        let _ = writeln!(
            out,
            "{}: {} of {} checks passed",
            if self.passed { "ok" } else { "failed" },
            self.verdicts.len() - failed,
            self.verdicts.len()
        );
        if let Some(ms) = self.timing_ms {
            let _ = writeln!(out, "time: {ms:.3} ms");
        }
        out
    }
}
