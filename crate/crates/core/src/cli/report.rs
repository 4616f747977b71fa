use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use super::spec::InstanceRef;
use crate::{Budget, Error};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Skipped,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub theorem_id: String,
    pub instance: InstanceRef,
    pub verdict: Outcome,
    pub certificate: Value,
    /// Why a check failed on an error, or why it was skipped.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
    /// Short summary for the table.
    #[serde(skip)]
    pub key: String,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub budget: Budget,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(suite: &str, budget: Budget, checks: Vec<CheckRecord>) -> Self {
        let mut summary = Summary::default();
        for c in &checks {
            match c.verdict {
                Outcome::Pass => summary.pass += 1,
                Outcome::Fail => summary.fail += 1,
                Outcome::Skipped => summary.skipped += 1,
            }
        }
        VerificationReport {
            suite: suite.to_string(),
            budget,
            checks,
            summary,
        }
    }

    /// 0 when nothing failed; with `strict`, skips count as failures.
    pub fn exit_code(&self, strict: bool) -> i32 {
        if self.summary.fail > 0 || (strict && self.summary.skipped > 0) {
            1
        } else {
            0
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.verdict == Outcome::Fail)
    }

    pub fn all_pass(&self, theorem_prefix: &str) -> bool {
        let mut any = false;
        for c in self.checks.iter().filter(|c| c.theorem_id.starts_with(theorem_prefix)) {
            any = true;
            if c.verdict != Outcome::Pass {
                return false;
            }
        }
        any
    }

    pub fn to_json(&self) -> Result<String, Error> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{:<22} {:<26} {:<8} key", "theorem", "instance", "verdict");
        for c in &self.checks {
            let key = match (&c.note, c.verdict) {
                (Some(n), Outcome::Skipped | Outcome::Fail) if c.key.is_empty() => n.as_str(),
                _ => c.key.as_str(),
            };
            let _ = writeln!(
                s,
                "{:<22} {:<26} {:<8} {}",
                c.theorem_id,
                c.instance.name,
                c.verdict.as_str(),
                key
            );
        }
        let _ = writeln!(
            s,
            "suite {}: {} pass, {} fail, {} skipped (seed {})",
            self.suite, self.summary.pass, self.summary.fail, self.summary.skipped, self.budget.seed
        );
        s
    }
}
