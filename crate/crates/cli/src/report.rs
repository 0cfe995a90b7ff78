use std::io::Write;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;
use strichartz_core::{Error, Rational};

use crate::config::RunConfig;

/// Result of one check before bookkeeping.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub expected: String,
    pub actual: String,
    /// `None` marks an exact comparison.
    pub tolerance: Option<f64>,
    pub pass: bool,
    pub detail: Option<Value>,
}

impl Outcome {
    pub fn exact(expected: &Rational, actual: &Rational) -> Self {
        Outcome {
            expected: expected.to_string(),
            actual: actual.to_string(),
            tolerance: None,
            pass: expected == actual,
            detail: None,
        }
    }

    /// Passes when `|expected - actual| ≤ tolerance`.
    pub fn close(expected: f64, actual: f64, tolerance: f64) -> Self {
        Outcome {
            expected: decimal(expected),
            actual: decimal(actual),
            tolerance: Some(tolerance),
            pass: (expected - actual).abs() <= tolerance,
            detail: None,
        }
    }

    /// Passes when `|expected - actual| ≤ tolerance·|expected|`.
    pub fn relative(expected: f64, actual: f64, tolerance: f64) -> Self {
        Outcome {
            pass: (expected - actual).abs() <= tolerance * expected.abs(),
            ..Outcome::close(expected, actual, tolerance)
        }
    }

    /// A boolean property stated as `expected` and observed as `actual`.
    pub fn holds(expected: &str, actual: String, pass: bool) -> Self {
        Outcome {
            expected: expected.into(),
            actual,
            tolerance: None,
            pass,
            detail: None,
        }
    }

    pub fn with_detail(mut self, detail: Value) -> Self {
        self.detail = Some(detail);
        self
    }
}

/// 17 significant digits, enough to round-trip an f64.
pub fn decimal(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: String,
    pub inputs: Value,
    pub expected: String,
    pub actual: String,
    pub tolerance: Option<f64>,
    pub exact: bool,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_s: Option<f64>,
    #[serde(skip)]
    pub cap_exceeded: bool,
}

pub type TaskFn = Box<dyn FnOnce() -> strichartz_core::Result<Outcome> + Send>;

/// A check waiting to run.
pub struct Task {
    pub id: String,
    pub inputs: Value,
    pub run: TaskFn,
}

impl Task {
    pub fn new(id: impl Into<String>, inputs: Value, run: impl FnOnce() -> strichartz_core::Result<Outcome> + Send + 'static) -> Self {
        Task {
            id: id.into(),
            inputs,
            run: Box::new(run),
        }
    }

    pub fn execute(self, timing: bool) -> Check {
        let start = Instant::now();
        let result = (self.run)();
        let wall = timing.then(|| start.elapsed().as_secs_f64());
        match result {
            Ok(o) => Check {
                id: self.id,
                inputs: self.inputs,
                exact: o.tolerance.is_none(),
                expected: o.expected,
                actual: o.actual,
                tolerance: o.tolerance,
                pass: o.pass,
                detail: o.detail,
                error: None,
                wall_time_s: wall,
                cap_exceeded: false,
            },
            Err(e) => Check {
                id: self.id,
                inputs: self.inputs,
                expected: String::new(),
                actual: String::new(),
                tolerance: None,
                exact: false,
                pass: false,
                detail: None,
                cap_exceeded: matches!(e, Error::CapExceeded { .. }),
                error: Some(e.to_string()),
                wall_time_s: wall,
            },
        }
    }
}

/// A named table of strings, for outputs that are data rather than checks.
#[derive(Clone, Debug, Serialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
    pub cap_exceeded: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub version: String,
    pub config_echo: RunConfig,
    pub checks: Vec<Check>,
    pub summary: Summary,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub tables: Vec<Table>,
}

impl Report {
    pub fn new(config: RunConfig, checks: Vec<Check>, tables: Vec<Table>) -> Self {
        let summary = Summary {
            total: checks.len(),
            passed: checks.iter().filter(|c| c.pass).count(),
            failed: checks.iter().filter(|c| !c.pass).count(),
            errors: checks.iter().filter(|c| c.error.is_some()).count(),
            cap_exceeded: checks.iter().filter(|c| c.cap_exceeded).count(),
        };
        Report {
            version: env!("CARGO_PKG_VERSION").into(),
            config_echo: config,
            checks,
            summary,
            tables,
        }
    }

    /// 0 when every check passes, 3 if any hit a resource cap, else 1.
    pub fn exit_code(&self) -> u8 {
        if self.summary.cap_exceeded > 0 {
            3
        } else if self.summary.failed > 0 {
            1
        } else {
            0
        }
    }

    pub fn write_json(&self, out: impl Write) -> std::io::Result<()> {
        let mut out = out;
        serde_json::to_writer_pretty(&mut out, self)?;
        writeln!(out)
    }

    /// A report carrying exactly one table writes that table; otherwise the
    /// checks are written one per row.
    pub fn write_csv(&self, out: impl Write) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        if let [table] = self.tables.as_slice() {
            w.write_record(&table.columns)?;
            for row in &table.rows {
                w.write_record(row)?;
            }
        } else {
            w.write_record(["id", "inputs", "expected", "actual", "tolerance", "exact", "pass", "error", "wall_time_s"])?;
            for c in &self.checks {
                w.write_record([
                    c.id.clone(),
                    c.inputs.to_string(),
                    c.expected.clone(),
                    c.actual.clone(),
                    c.tolerance.map(decimal).unwrap_or_default(),
                    c.exact.to_string(),
                    c.pass.to_string(),
                    c.error.clone().unwrap_or_default(),
                    c.wall_time_s.map(|t| format!("{t:.3}")).unwrap_or_default(),
                ])?;
            }
        }
        w.flush()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn outcomes() {
        assert!(Outcome::relative(2.0, 2.0 + 1e-9, 1e-8).pass);
        assert!(!Outcome::relative(2.0, 2.1, 1e-8).pass);
        assert!(Outcome::close(0.0, 1e-12, 1e-10).pass);
        let o = Outcome::exact(&Rational::new(1.into(), 2.into()), &Rational::new(2.into(), 4.into()));
        assert!(o.pass && o.tolerance.is_none() && o.expected == "1/2");
    }

    #[test]
    fn cap_errors_map_to_exit_three() {
        let t = Task::new("cap", json!({}), || {
            Err(Error::CapExceeded {
                what: "test",
                size: 10,
                cap: 1,
            })
        });
        let ok = Task::new("ok", json!({}), || Ok(Outcome::holds("x", "x".into(), true)));
        let r = Report::new(RunConfig::default(), vec![t.execute(false), ok.execute(false)], vec![]);
        assert_eq!(r.exit_code(), 3);
        assert_eq!(r.summary.errors, 1);
        let fail = Task::new("bad", json!({}), || Ok(Outcome::holds("x", "y".into(), false)));
        assert_eq!(Report::new(RunConfig::default(), vec![fail.execute(false)], vec![]).exit_code(), 1);
    }
}
