//! Structured run reports and their serialized forms.
//!
//! [Report] [CommandResult] [Format] [emit] [canonical_json] plus JSON value
//! builders for the exact types ([q_value] [poly_value] [ratfn_value]
//! [lead_value] [place_value]).
//!
//! Canonical JSON is byte-reproducible: object keys are sorted (serde_json's
//! default map), struct fields serialize in declaration order, rationals and
//! big integers travel as decimal strings, and wall-clock timings are never
//! serialized.  Two runs that compute the same values emit identical bytes
//! regardless of thread count.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use weilq_core::exact::{LaurentLead, PolyQ, Q, RationalFunctionQ};
use weilq_core::function_field::Place;

use crate::jobspec::{SpecError, SCHEMA_VERSION};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = SpecError;
    fn from_str(s: &str) -> Result<Self, SpecError> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            other => Err(SpecError::Parse(format!(
                "unknown format {:?}; expected json, csv or text",
                other
            ))),
        }
    }
}

/// Outcome of one command.  `verdict` is set only by verification ops
/// ("pass"/"fail"); `error` carries the message when the computation itself
/// was rejected.  Timing is kept for the text renderer but never serialized.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CommandResult {
    pub target: String,
    pub op: String,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub inputs: Value,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub outputs: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub route: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip)]
    pub timing_ms: u128,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub q: u32,
    pub results: Vec<CommandResult>,
}

impl Report {
    pub fn new(q: u32) -> Report {
        Report { schema: SCHEMA_VERSION, q, results: Vec::new() }
    }

    /// 0 when every command ran and every verification passed, else 1.
    pub fn exit_code(&self) -> i32 {
        let ok = self
            .results
            .iter()
            .all(|r| r.error.is_none() && r.verdict.as_deref() != Some("fail"));
        if ok {
            0
        } else {
            1
        }
    }
}

/// Compact JSON with sorted object keys; the determinism checks compare these
/// bytes directly.
pub fn canonical_json(report: &Report) -> String {
    serde_json::to_string(report).expect("report serialization cannot fail")
}

/// Rationals as "num/den" strings, integers bare; never floats.
pub fn q_value(x: &Q) -> Value {
    Value::String(x.to_string())
}

/// Coefficient strings, least degree first.
pub fn poly_value(p: &PolyQ) -> Value {
    Value::Array(p.coeffs().iter().map(q_value).collect())
}

pub fn ratfn_value(f: &RationalFunctionQ) -> Value {
    json!({ "num": poly_value(f.num()), "den": poly_value(f.den()) })
}

pub fn lead_value(l: &LaurentLead) -> Value {
    json!({ "order": l.order, "value": q_value(&l.value) })
}

/// Finite places print as their monic uniformizer in t.
pub fn place_value(q: u32, v: &Place) -> Value {
    match v.poly(q) {
        Some(p) => Value::String(p.to_string()),
        None => Value::String("infinity".into()),
    }
}

const CSV_HEADER: &str = "q,n,tau_ono,tau_modern,verdict";

fn csv_row(r: &CommandResult) -> Result<String, SpecError> {
    let get = |key: &str| -> Result<String, SpecError> {
        let v = r.outputs.get(key).ok_or_else(|| {
            SpecError::Validation(format!(
                "csv output needs field {:?} in every result; op {:?} does not produce it",
                key, r.op
            ))
        })?;
        Ok(match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        })
    };
    let verdict = r
        .verdict
        .clone()
        .or_else(|| r.error.as_ref().map(|_| "error".to_string()))
        .unwrap_or_else(|| "pass".to_string());
    Ok(format!("{},{},{},{},{}", get("q")?, get("n")?, get("tau_ono")?, get("tau_modern")?, verdict))
}

fn emit_csv(report: &Report) -> Result<String, SpecError> {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in &report.results {
        if r.error.is_some() {
            return Err(SpecError::Validation(format!(
                "csv output is only available when every command succeeds; {} {} failed: {}",
                r.target,
                r.op,
                r.error.as_deref().unwrap_or("")
            )));
        }
        out.push_str(&csv_row(r)?);
        out.push('\n');
    }
    Ok(out)
}

fn emit_text(report: &Report) -> String {
    let mut out = format!("q = {} (schema {})\n", report.q, report.schema);
    let mut pass = 0usize;
    let mut fail = 0usize;
    let mut errs = 0usize;
    for r in &report.results {
        let tag = match (&r.error, r.verdict.as_deref()) {
            (Some(_), _) => {
                errs += 1;
                "ERROR"
            }
            (None, Some("fail")) => {
                fail += 1;
                "FAIL"
            }
            (None, Some("pass")) => {
                pass += 1;
                "PASS"
            }
            (None, _) => "  ok",
        };
        out.push_str(&format!("{:>5}  {} {}", tag, r.target, r.op));
        if let Some(route) = &r.route {
            out.push_str(&format!("  [{}]", route));
        }
        out.push('\n');
        if let Some(e) = &r.error {
            out.push_str(&format!("       {}\n", e));
        } else if !r.outputs.is_null() {
            out.push_str(&format!("       {}\n", compact_line(&r.outputs)));
        }
    }
    let checks = pass + fail;
    if checks > 0 || errs > 0 {
        out.push_str(&format!(
            "{} passed, {} failed, {} errors, {} commands\n",
            pass,
            fail,
            errs,
            report.results.len()
        ));
    }
    out
}

fn compact_line(v: &Value) -> String {
    serde_json::to_string(v).unwrap_or_else(|_| "<unprintable>".into())
}

pub fn emit(report: &Report, format: Format) -> Result<String, SpecError> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report)
                .expect("report serialization cannot fail");
            s.push('\n');
            Ok(s)
        }
        Format::Csv => emit_csv(report),
        Format::Text => Ok(emit_text(report)),
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Text => "text",
        };
        write!(f, "{}", s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigInt;

    fn sample_result() -> CommandResult {
        CommandResult {
            target: "T".into(),
            op: "verify_ono".into(),
            inputs: Value::Null,
            outputs: json!({ "q": 3, "n": 2, "tau_ono": "2", "tau_modern": "2" }),
            verdict: Some("pass".into()),
            route: Some("lattice_kernel".into()),
            error: None,
            timing_ms: 17,
        }
    }

    #[test]
    fn canonical_json_ignores_timing() {
        let mut report = Report::new(3);
        report.results.push(sample_result());
        let a = canonical_json(&report);
        report.results[0].timing_ms = 99_999;
        let b = canonical_json(&report);
        assert_eq!(a, b);
        assert!(!a.contains("timing"));
    }

    #[test]
    fn csv_needs_tamagawa_fields() {
        let mut report = Report::new(3);
        report.results.push(sample_result());
        let csv = emit(&report, Format::Csv).unwrap();
        assert_eq!(csv, "q,n,tau_ono,tau_modern,verdict\n3,2,2,2,pass\n");
        report.results[0].outputs = json!({ "lead": "x" });
        assert!(emit(&report, Format::Csv).is_err());
    }

    #[test]
    fn exit_codes_reflect_verdicts_and_errors() {
        let mut report = Report::new(3);
        report.results.push(sample_result());
        assert_eq!(report.exit_code(), 0);
        report.results[0].verdict = Some("fail".into());
        assert_eq!(report.exit_code(), 1);
        report.results[0].verdict = None;
        report.results[0].error = Some("boom".into());
        assert_eq!(report.exit_code(), 1);
    }

    #[test]
    fn rationals_serialize_as_strings() {
        let half = Q::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(q_value(&half), Value::String("1/2".into()));
        assert_eq!(q_value(&Q::from_integer(BigInt::from(7))), Value::String("7".into()));
    }

    #[test]
    fn text_rendering_summarizes_verdicts() {
        let mut report = Report::new(3);
        report.results.push(sample_result());
        let text = emit(&report, Format::Text).unwrap();
        assert!(text.contains("PASS  T verify_ono"));
        assert!(text.contains("1 passed, 0 failed"));
    }
}
