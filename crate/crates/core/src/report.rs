//! Check records and their json-lines, csv and human renderings.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::{Error, Result};

/// Output format of a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    JsonLines,
    Csv,
    Human,
}

/// One verified identity.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    /// `suite/name`, unique across suites.
    pub check: String,
    pub params: Map<String, Value>,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub runtime_ms: Option<f64>,
    pub error_estimate: Option<f64>,
    #[serde(skip)]
    pub description: String,
}

impl CheckReport {
    /// A check passing when `residual <= tolerance` (exactly zero for a zero
    /// tolerance); non-finite residuals fail.
    pub fn new(check: impl Into<String>, description: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        CheckReport {
            check: check.into(),
            params: Map::new(),
            residual,
            tolerance,
            pass: residual.is_finite() && residual <= tolerance,
            runtime_ms: None,
            error_estimate: None,
            description: description.into(),
        }
    }

    /// A check that could not be evaluated.
    pub fn failed(check: impl Into<String>, description: impl Into<String>, tolerance: f64, err: &Error) -> Self {
        let mut r = Self::new(check, description, f64::NAN, tolerance);
        r.params.insert("error".into(), Value::String(err.to_string()));
        r
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.into(), value.into());
        self
    }

    pub fn with_error_estimate(mut self, e: f64) -> Self {
        self.error_estimate = Some(e);
        self
    }

    /// Re-evaluates `pass` with the tolerance scaled by `scale`.
    pub fn rescale(mut self, scale: f64) -> Self {
        self.tolerance *= scale;
        self.pass = self.residual.is_finite() && self.residual <= self.tolerance;
        self
    }
}

/// Sorts by check name; ties (which indicate a naming bug) keep input order.
pub fn sort_reports(reports: &mut [CheckReport]) {
    reports.sort_by(|a, b| a.check.cmp(&b.check));
}

pub fn render(reports: &[CheckReport], format: Format) -> Result<String> {
    match format {
        Format::JsonLines => {
            let mut out = String::new();
            for r in reports {
                let line = serde_json::to_string(r).map_err(|e| Error::Config(format!("serialize: {e}")))?;
                out.push_str(&line);
                out.push('\n');
            }
            Ok(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| Error::Config(format!("csv: {e}"));
            w.write_record(["check", "params", "residual", "tolerance", "pass", "runtime_ms", "error_estimate"]).map_err(io)?;
            for r in reports {
                let opt = |v: Option<f64>| v.map(|x| format!("{x:e}")).unwrap_or_default();
                w.write_record([
                    r.check.clone(),
                    Value::Object(r.params.clone()).to_string(),
                    format!("{:e}", r.residual),
                    format!("{:e}", r.tolerance),
                    r.pass.to_string(),
                    opt(r.runtime_ms),
                    opt(r.error_estimate),
                ])
                .map_err(io)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Config(format!("csv: {e}")))?;
            String::from_utf8(bytes).map_err(|e| Error::Config(format!("csv: {e}")))
        }
        Format::Human => {
            let mut out = String::new();
            let width = reports.iter().map(|r| r.check.len()).max().unwrap_or(0);
            for r in reports {
                let status = if r.pass { "PASS" } else { "FAIL" };
                let _ = write!(out, "{status}  {:width$}  residual {:>10.3e}  tol {:>9.2e}", r.check, r.residual, r.tolerance);
                if let Some(t) = r.runtime_ms {
                    let _ = write!(out, "  {t:>9.1} ms");
                }
                let _ = writeln!(out, "  {}", r.description);
                if let Some(Value::String(e)) = r.params.get("error") {
                    let _ = writeln!(out, "      error: {e}");
                }
            }
            let failed = reports.iter().filter(|r| !r.pass).count();
            let _ = writeln!(out, "{} checks, {} passed, {} failed", reports.len(), reports.len() - failed, failed);
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_field_order_matches_schema() {
        let r = CheckReport::new("a/b", "d", 1e-3, 1e-2).param("n", 1);
        let s = render(&[r], Format::JsonLines).unwrap();
        assert_eq!(
            s,
            "{\"check\":\"a/b\",\"params\":{\"n\":1},\"residual\":0.001,\"tolerance\":0.01,\"pass\":true,\"runtime_ms\":null,\"error_estimate\":null}\n"
        );
    }

    #[test]
    fn zero_tolerance_requires_exact_zero() {
        assert!(CheckReport::new("x", "", 0.0, 0.0).pass);
        assert!(!CheckReport::new("x", "", 1e-300, 0.0).pass);
        assert!(!CheckReport::new("x", "", f64::NAN, 1.0).pass);
    }

    #[test]
    fn csv_quotes_params() {
        let r = CheckReport::new("a/b", "d", 0.0, 0.0).param("x", "1,2");
        let s = render(&[r], Format::Csv).unwrap();
        assert!(s.lines().nth(1).unwrap().starts_with("a/b,\"{\"\"x\"\":\"\"1,2\"\"}\""));
    }
}
