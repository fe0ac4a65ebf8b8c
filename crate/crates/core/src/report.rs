//! Structured results written by the command-line tool.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::certify::GainCertificate;
use crate::error::Result;

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Source {
    /// Published reference value.
    Paper,
    /// Identity or closed form.
    Trivial,
    /// Computed by an independent route.
    Derived,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::Paper => "PAPER",
            Source::Trivial => "TRIVIAL",
            Source::Derived => "DERIVED",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub description: String,
    pub source: Source,
    pub expected: Option<f64>,
    pub measured: Option<f64>,
    /// Human-readable acceptance rule, e.g. `rel <= 1e-2`.
    pub tolerance: String,
    pub passed: bool,
}

impl Check {
    pub fn relative(
        id: &str,
        description: &str,
        source: Source,
        measured: f64,
        expected: f64,
        rel: f64,
    ) -> Self {
        let passed = ((measured - expected) / expected).abs() <= rel;
        Self::with(
            id,
            description,
            source,
            Some(expected),
            Some(measured),
            format!("rel <= {rel:e}"),
            passed,
        )
    }

    pub fn absolute(
        id: &str,
        description: &str,
        source: Source,
        measured: f64,
        expected: f64,
        tol: f64,
    ) -> Self {
        let passed = (measured - expected).abs() <= tol;
        Self::with(
            id,
            description,
            source,
            Some(expected),
            Some(measured),
            format!("abs <= {tol:e}"),
            passed,
        )
    }

    pub fn at_most(id: &str, description: &str, source: Source, measured: f64, bound: f64) -> Self {
        Self::with(
            id,
            description,
            source,
            Some(bound),
            Some(measured),
            "<= expected".into(),
            measured <= bound,
        )
    }

    pub fn above(id: &str, description: &str, source: Source, measured: f64, bound: f64) -> Self {
        Self::with(
            id,
            description,
            source,
            Some(bound),
            Some(measured),
            "> expected".into(),
            measured > bound,
        )
    }

    pub fn flag(id: &str, description: &str, source: Source, passed: bool) -> Self {
        Self::with(id, description, source, None, None, "holds".into(), passed)
    }

    fn with(
        id: &str,
        description: &str,
        source: Source,
        expected: Option<f64>,
        measured: Option<f64>,
        tolerance: String,
        passed: bool,
    ) -> Self {
        Self {
            id: id.into(),
            description: description.into(),
            source,
            expected,
            measured,
            tolerance,
            passed: passed && measured.is_none_or(f64::is_finite),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub command: String,
    pub config: serde_json::Value,
    pub certificates: Vec<GainCertificate>,
    pub metrics: BTreeMap<String, f64>,
    pub notes: Vec<String>,
    pub manifest: Vec<String>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl ExperimentReport {
    pub fn new(command: &str, config: serde_json::Value) -> Self {
        Self {
            command: command.into(),
            config,
            passed: true,
            ..Default::default()
        }
    }

    pub fn metric(&mut self, name: impl Into<String>, value: f64) {
        self.metrics.insert(name.into(), value);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn check(&mut self, check: Check) {
        self.passed &= check.passed;
        self.checks.push(check);
    }

    /// Marks the report failed without a specific check, e.g. after a
    /// sub-computation errored.
    pub fn fail(&mut self, note: impl Into<String>) {
        self.passed = false;
        self.notes.push(note.into());
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn write_json(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }

    /// Plain-text summary for the terminal.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "== {} ==", self.command);
        for c in &self.certificates {
            let _ = writeln!(
                out,
                "certificate  M = {:<16} class {:<10} gamma {:>12.6}  margin {:.3e}  grid {}  k {}",
                c.multiplier.to_string(),
                c.multiplier_class.to_string(),
                c.gamma,
                c.min_margin,
                c.grid_size,
                c.k
            );
        }
        if !self.metrics.is_empty() {
            let width = self.metrics.keys().map(String::len).max().unwrap_or(0);
            for (k, v) in &self.metrics {
                let _ = writeln!(out, "  {k:<width$}  {v:.6e}");
            }
        }
        for c in &self.checks {
            let fmt_opt = |v: Option<f64>| v.map_or_else(|| "-".to_string(), |v| format!("{v:.6}"));
            let _ = writeln!(
                out,
                "[{}] {:<6} {:<60} measured {:>14} expected {:>14} ({}, {})",
                if c.passed { "PASS" } else { "FAIL" },
                c.id,
                c.description,
                fmt_opt(c.measured),
                fmt_opt(c.expected),
                c.tolerance,
                c.source
            );
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        for m in &self.manifest {
            let _ = writeln!(out, "wrote {m}");
        }
        let _ = writeln!(
            out,
            "overall: {}",
            if self.passed { "PASS" } else { "FAIL" }
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checks_fold_into_overall_status() {
        let mut r = ExperimentReport::new("x", serde_json::json!({}));
        r.check(Check::relative("a", "rel", Source::Paper, 1.005, 1.0, 1e-2));
        assert!(r.passed);
        r.check(Check::above("b", "above", Source::Derived, 0.001, 0.01));
        assert!(!r.passed);
        assert!(!Check::at_most("c", "nan", Source::Derived, f64::NAN, 1.0).passed);
        assert!(Check::absolute("d", "abs", Source::Trivial, 1.0, 1.0 + 1e-13, 1e-12).passed);
        assert!(r.render_table().contains("[FAIL] b"));
        let json = r.to_json().unwrap();
        assert!(json.contains("\"source\": \"PAPER\""));
    }
}
