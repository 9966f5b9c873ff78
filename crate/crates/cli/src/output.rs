use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{CliError, Format, RunArgs};

pub const SCHEMA: &str = "ptsphere-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

/// One named check with its outcome and free-form evidence.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub detail: Value,
}

impl Check {
    pub fn new(name: &str, status: Status, detail: Value) -> Self {
        Check { name: name.into(), status, detail }
    }

    pub fn skipped(name: &str, why: &str) -> Self {
        Check::new(name, Status::Skipped, json!({ "reason": why }))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub version: &'static str,
    pub command: String,
    pub seed: u64,
    pub parallel: bool,
    pub tolerances: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<usize>,
    pub params: BTreeMap<String, String>,
    pub status: Status,
    pub checks: Vec<Check>,
    pub result: Value,
}

impl Report {
    pub fn new(command: &str, args: &RunArgs) -> Self {
        Report {
            schema: SCHEMA,
            version: env!("CARGO_PKG_VERSION"),
            command: command.into(),
            seed: args.seed,
            parallel: args.mode().is_parallel(),
            tolerances: BTreeMap::new(),
            grid: None,
            params: args.echo().into_iter().collect(),
            status: Status::Pass,
            checks: Vec::new(),
            result: Value::Null,
        }
    }

    pub fn tol(&mut self, name: &str, v: f64) {
        self.tolerances.insert(name.into(), v);
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    /// Fail when any check failed.
    pub fn finish(&mut self) {
        self.status = Status::from_bool(self.checks.iter().all(|c| c.status != Status::Fail));
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// `check,status,detail` rows.
    pub fn checks_csv(&self) -> String {
        let mut s = String::from("check,status,detail\n");
        for c in &self.checks {
            let detail = if c.detail.is_null() { String::new() } else { c.detail.to_string() };
            s.push_str(&format!("{},{},{}\n", csv_field(&c.name), c.status.as_str(), csv_field(&detail)));
        }
        s
    }
}

pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn write_to(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// JSON, or CSV (`csv` or the check table) plus a JSON summary next to the
/// output file.
pub fn emit(report: &Report, args: &RunArgs, csv: Option<String>) -> Result<(), CliError> {
    let out = args.out.as_deref();
    match args.format {
        Format::Json => write_to(out, &report.to_json()),
        Format::Csv => {
            write_to(out, &csv.unwrap_or_else(|| report.checks_csv()))?;
            if let Some(p) = out {
                std::fs::write(p.with_extension("summary.json"), report.to_json())?;
            }
            Ok(())
        }
    }
}
