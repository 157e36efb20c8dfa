//! Check records and deterministic report emission.

use std::fmt::Write as _;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use dbar_core::field::fmt_sig17;
use dbar_core::moments::DiagonalSeries;
use dbar_core::Field;
use serde::Serialize;
use serde_json::Value;

use crate::config::RunConfig;
use crate::CliError;

/// One verified quantity. `measured` is compared against `bound` with the
/// allowed deviation `tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub passes: bool,
    /// Set for checks on non-compliant data, where `passes` means the
    /// expected violation was observed.
    pub informational: bool,
    pub measured: f64,
    pub bound: f64,
    pub tolerance: f64,
    /// Wall time of the computation behind the record; omitted in
    /// sequential mode so reports are byte-reproducible.
    pub runtime_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteResult {
    pub checks: Vec<CheckRecord>,
    pub overall: bool,
}

impl SuiteResult {
    pub fn new(checks: Vec<CheckRecord>) -> Self {
        let overall = checks.iter().all(|c| c.passes);
        Self { checks, overall }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.passes)
    }
}

/// Everything a pipeline produced: the verdicts, module reports, and the
/// fields and series available for CSV dumps.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub subcommand: String,
    pub config: RunConfig,
    pub sequential: bool,
    pub result: SuiteResult,
    pub details: Value,
    pub fields: Vec<(String, Field)>,
    pub series: Vec<(String, DiagonalSeries)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(CliError::InvalidArgument(format!(
                "unknown output format `{other}` (expected json or csv)"
            ))),
        }
    }
}

/// The JSON document of a run: resolved config, verdicts and details.
pub fn report_json(out: &RunOutput) -> Result<String, CliError> {
    let doc = serde_json::json!({
        "subcommand": out.subcommand,
        "config": out.config,
        "sequential": out.sequential,
        "result": out.result,
        "details": out.details,
    });
    let mut s = String::new();
    write_value(&mut s, &doc, 0);
    s.push('\n');
    Ok(s)
}

/// Writes the reports of a run into `dir` and returns the written paths.
///
/// `json` writes `<subcommand>.json`. `csv` writes the check table
/// `<subcommand>-checks.csv`, one CSV per field and per diagonal series,
/// and the JSON document alongside.
pub fn emit_report(out: &RunOutput, format: &str, dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let format = Format::from_str(format)?;
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    let json_path = dir.join(format!("{}.json", out.subcommand));
    fs::write(&json_path, report_json(out)?)?;
    written.push(json_path);
    if format == Format::Csv {
        let path = dir.join(format!("{}-checks.csv", out.subcommand));
        fs::write(&path, checks_csv(&out.result))?;
        written.push(path);
        for (name, field) in &out.fields {
            let path = dir.join(format!("{name}.csv"));
            let mut w = BufWriter::new(fs::File::create(&path)?);
            field.write_csv(&mut w)?;
            w.flush()?;
            written.push(path);
        }
        for (name, series) in &out.series {
            let path = dir.join(format!("{name}.csv"));
            let mut w = BufWriter::new(fs::File::create(&path)?);
            series.write_csv(&mut w)?;
            w.flush()?;
            written.push(path);
        }
    }
    Ok(written)
}

fn checks_csv(result: &SuiteResult) -> String {
    let mut s = String::from("name,passes,informational,measured,bound,tolerance,runtime_ms\n");
    for c in &result.checks {
        let rt = c.runtime_ms.map(fmt_sig17).unwrap_or_default();
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{}",
            c.name,
            c.passes,
            c.informational,
            fmt_sig17(c.measured),
            fmt_sig17(c.bound),
            fmt_sig17(c.tolerance),
            rt
        );
    }
    s
}

/// Pretty JSON with sorted keys (the default `serde_json` map is ordered)
/// and floats at 17 significant digits.
fn write_value(out: &mut String, v: &Value, indent: usize) {
    let pad = |out: &mut String, n: usize| out.extend(std::iter::repeat_n(' ', 2 * n));
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if n.is_f64() {
                out.push_str(&fmt_sig17(n.as_f64().expect("f64 number")));
            } else {
                out.push_str(&n.to_string());
            }
        }
        Value::String(s) => out.push_str(&Value::String(s.clone()).to_string()),
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str("[]");
                return;
            }
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                pad(out, indent + 1);
                write_value(out, item, indent + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            pad(out, indent);
            out.push(']');
        }
        Value::Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
                return;
            }
            out.push_str("{\n");
            for (i, (k, item)) in map.iter().enumerate() {
                pad(out, indent + 1);
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(out, item, indent + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            pad(out, indent);
            out.push('}');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(name: &str, passes: bool, informational: bool) -> CheckRecord {
        CheckRecord {
            name: name.into(),
            passes,
            informational,
            measured: 0.1,
            bound: 1.0,
            tolerance: 1e-6,
            runtime_ms: None,
        }
    }

    #[test]
    fn overall_is_the_conjunction() {
        assert!(SuiteResult::new(vec![record("a", true, false), record("b", true, true)]).overall);
        assert!(!SuiteResult::new(vec![record("a", false, false)]).overall);
        assert!(!SuiteResult::new(vec![record("g", false, true)]).overall);
    }

    #[test]
    fn floats_have_seventeen_digits_and_keys_are_sorted() {
        let v = serde_json::json!({"b": 0.1, "a": [1, 2.0], "c": null});
        let mut s = String::new();
        write_value(&mut s, &v, 0);
        assert_eq!(
            s,
            "{\n  \"a\": [\n    1,\n    2.0000000000000000e0\n  ],\n  \"b\": 1.0000000000000001e-1,\n  \"c\": null\n}"
        );
        let back: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back["b"], 0.1);
    }

    #[test]
    fn emitted_floats_parse_back_to_the_same_bits() {
        for x in [
            1e-6,
            0.1,
            1.0 / 3.0,
            std::f64::consts::PI,
            5e-324,
            1.7976931348623157e308,
        ] {
            let mut s = String::new();
            write_value(&mut s, &serde_json::json!(x), 0);
            let back: f64 = serde_json::from_str(&s).unwrap();
            assert_eq!(back.to_bits(), x.to_bits(), "{s}");
        }
    }

    #[test]
    fn unknown_format_is_invalid_argument() {
        assert!(matches!(
            Format::from_str("xml"),
            Err(CliError::InvalidArgument(_))
        ));
    }
}
