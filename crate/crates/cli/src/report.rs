//! Check records, the machine-readable report and the human table.

use std::time::Duration;

use gauge_core::error::Error;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Unverified,
    Error,
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Unverified => "unverified",
            Status::Error => "error",
        }
    }
}

/// One check. Timing is shown in the table but kept out of the machine
/// report so that reruns produce identical bytes.
#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub name: String,
    pub status: Status,
    pub details: serde_json::Value,
    #[serde(skip)]
    pub timing: Duration,
    #[serde(skip)]
    pub precision_exhausted: bool,
}

impl Record {
    pub fn new(name: impl Into<String>, status: Status, details: serde_json::Value) -> Record {
        Record { name: name.into(), status, details, timing: Duration::ZERO, precision_exhausted: false }
    }

    pub fn pass_if(name: impl Into<String>, ok: bool, details: serde_json::Value) -> Record {
        Record::new(name, if ok { Status::Pass } else { Status::Fail }, details)
    }

    pub fn error(name: impl Into<String>, e: &Error) -> Record {
        let mut r = Record::new(name, Status::Error, serde_json::json!({ "error": e.to_string() }));
        r.precision_exhausted = matches!(e, Error::InsufficientPrecision);
        r
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub records: Vec<Record>,
}

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PRECISION: i32 = 3;

impl Report {
    pub fn new(command: impl Into<String>) -> Report {
        Report { command: command.into(), records: Vec::new() }
    }

    /// Runs `f`, timing it and turning an error into an error record.
    pub fn run(&mut self, name: &str, f: impl FnOnce() -> gauge_core::error::Result<Record>) {
        let start = std::time::Instant::now();
        let mut rec = f().unwrap_or_else(|e| Record::error(name, &e));
        rec.timing = start.elapsed();
        self.records.push(rec);
    }

    pub fn push(&mut self, rec: Record) {
        self.records.push(rec);
    }

    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| matches!(r.status, Status::Pass | Status::Unverified))
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            EXIT_PASS
        } else if self.records.iter().any(|r| r.precision_exhausted) {
            EXIT_PRECISION
        } else {
            EXIT_FAIL
        }
    }

    /// Pretty JSON with fields in declaration order.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// An aligned table: status, name, time and a one-line summary.
    pub fn table(&self) -> String {
        let width = self.records.iter().map(|r| r.name.len()).max().unwrap_or(4).max(5);
        let mut out = format!("{:<10}  {:<width$}  {:>9}  {}\n", "status", "check", "time", "details", width = width);
        for r in &self.records {
            out.push_str(&format!(
                "{:<10}  {:<width$}  {:>8.3}s  {}\n",
                r.status.label(),
                r.name,
                r.timing.as_secs_f64(),
                summary(&r.details),
                width = width
            ));
        }
        let failed = self.records.iter().filter(|r| matches!(r.status, Status::Fail | Status::Error)).count();
        out.push_str(&format!(
            "{} checks, {} failed: {}\n",
            self.records.len(),
            failed,
            if self.passed() { "PASS" } else { "FAIL" }
        ));
        out
    }
}

fn summary(v: &serde_json::Value) -> String {
    let s = match v {
        serde_json::Value::Object(m) => m
            .iter()
            .filter(|(_, x)| !x.is_array() && !x.is_object())
            .map(|(k, x)| format!("{}={}", k, x.to_string().trim_matches('"')))
            .collect::<Vec<_>>()
            .join(" "),
        other => other.to_string(),
    };
    if s.chars().count() > 110 {
        format!("{}...", s.chars().take(107).collect::<String>())
    } else {
        s
    }
}
