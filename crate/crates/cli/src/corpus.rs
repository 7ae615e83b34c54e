//! Batch runs over a JSON corpus of equations with expected results.

use crate::{Common, Format, Usage};
use cubic_ode_core::catalog::{painleve, parse_params, Family};
use cubic_ode_core::equivalence::{check, Target};
use cubic_ode_core::{analyze, parse_ode, Engine, OdeCubic};
use cubic_ode_expr::{parse_expr, AssumptionSet};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusFile {
    pub schema_version: u32,
    pub entries: Vec<Entry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub id: String,
    #[serde(default)]
    pub equation: Option<String>,
    #[serde(default)]
    pub family: Option<String>,
    #[serde(default)]
    pub params: Option<String>,
    #[serde(default)]
    pub assume: Vec<String>,
    #[serde(default)]
    pub expected: Expected,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    pub case: Option<String>,
    pub dimension: Option<u8>,
    #[serde(default)]
    pub equivalence: BTreeMap<String, EquivExpectation>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquivExpectation {
    pub verdict: String,
    pub failed_condition: Option<String>,
    /// Values that must appear among the recovered ones.
    #[serde(default)]
    pub parameters: BTreeMap<String, Vec<String>>,
}

#[derive(Serialize)]
pub struct Check {
    pub check: String,
    pub expected: String,
    pub got: String,
    pub ok: bool,
}

#[derive(Serialize)]
pub struct EntryResult {
    pub id: String,
    /// `pass`, `fail` or `error`.
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub checks: Vec<Check>,
}

#[derive(Serialize)]
struct CorpusReport {
    schema_version: u32,
    command: &'static str,
    corpus: String,
    passed: usize,
    failed: usize,
    entries: Vec<EntryResult>,
}

fn ode(entry: &Entry, common: &Common) -> Result<OdeCubic, String> {
    let mut assume = AssumptionSet::new();
    for a in common.assume.iter().chain(&entry.assume) {
        assume.parse_item(&a.replace(' ', ""))?;
    }
    match (&entry.equation, &entry.family) {
        (Some(text), None) => parse_ode(text, &assume).map_err(|e| e.to_string()),
        (None, Some(f)) => {
            let f: Family = f.parse().map_err(|e: cubic_ode_core::CoreError| e.to_string())?;
            let p = parse_params(entry.params.as_deref().unwrap_or("")).map_err(|e| e.to_string())?;
            Ok(painleve(f, &p).map_err(|e| e.to_string())?.with_assumptions(assume))
        }
        _ => Err("entry needs exactly one of `equation` and `family`".into()),
    }
}

fn same_value(a: &str, b: &str) -> bool {
    match (parse_expr(a).and_then(|e| e.to_ratfn()), parse_expr(b).and_then(|e| e.to_ratfn())) {
        (Ok(x), Ok(y)) => (x - y).is_zero(),
        _ => a == b,
    }
}

fn push(checks: &mut Vec<Check>, check: String, expected: String, got: String, ok: bool) {
    checks.push(Check { check, expected, got, ok });
}

fn run_entry(entry: &Entry, common: &Common) -> EntryResult {
    let fail = |e: String| EntryResult { id: entry.id.clone(), status: "error", error: Some(e), checks: Vec::new() };
    let ode = match ode(entry, common) {
        Ok(o) => o,
        Err(e) => return fail(e),
    };
    let mut checks = Vec::new();
    let exp = &entry.expected;
    if exp.case.is_some() || exp.dimension.is_some() {
        let (res, _) = analyze(&ode, common.probe(), common.depth);
        if let Some(want) = &exp.case {
            let got = res.case.label();
            push(&mut checks, "case".into(), want.clone(), got.clone(), &got == want);
        }
        if let Some(want) = exp.dimension {
            let got = res.dimension.as_ref().and_then(|d| d.value);
            let shown = res.dimension.as_ref().map_or("none".into(), |d| d.to_string());
            push(&mut checks, "dimension".into(), want.to_string(), shown, got == Some(want));
        }
    }
    for (name, want) in &exp.equivalence {
        let target: Target = match name.parse() {
            Ok(t) => t,
            Err(e) => return fail(format!("{e}")),
        };
        let r = check(target, &mut Engine::new(&ode, common.probe()));
        let got = serde_json::to_value(r.verdict).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
        push(&mut checks, format!("{name} verdict"), want.verdict.clone(), got.clone(), got == want.verdict);
        if let Some(fc) = &want.failed_condition {
            let got = r.failed_condition.clone().unwrap_or_else(|| "none".into());
            push(&mut checks, format!("{name} failed condition"), fc.clone(), got.clone(), &got == fc);
        }
        for (p, values) in &want.parameters {
            let found = r.parameters.get(p).cloned().unwrap_or_default();
            for v in values {
                let ok = found.iter().any(|f| same_value(f, v));
                push(&mut checks, format!("{name} {p}~"), v.clone(), format!("{{{}}}", found.join(", ")), ok);
            }
        }
    }
    let status = if checks.iter().all(|c| c.ok) { "pass" } else { "fail" };
    EntryResult { id: entry.id.clone(), status, error: None, checks }
}

pub fn run(path: &Path, jobs: Option<usize>, common: &Common) -> Result<u8, Usage> {
    let text = std::fs::read_to_string(path).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
    let file: CorpusFile = serde_json::from_str(&text).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
    if file.schema_version != 1 {
        return Err(Usage(format!("unsupported corpus schema_version {}", file.schema_version)));
    }
    let mut ids = BTreeSet::new();
    for e in &file.entries {
        if !ids.insert(e.id.as_str()) {
            return Err(Usage(format!("duplicate corpus id `{}`", e.id)));
        }
    }
    let threads = jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build().map_err(|e| Usage(e.to_string()))?;
    let mut entries: Vec<EntryResult> = pool.install(|| file.entries.par_iter().map(|e| run_entry(e, common)).collect());
    entries.sort_by(|a, b| a.id.cmp(&b.id));
    let passed = entries.iter().filter(|e| e.status == "pass").count();
    let report = CorpusReport {
        schema_version: crate::report::SCHEMA_VERSION,
        command: "corpus",
        corpus: path.display().to_string(),
        passed,
        failed: entries.len() - passed,
        entries,
    };
    match common.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("serializable report")),
        Format::Text => {
            for e in &report.entries {
                let bad: Vec<String> = e
                    .checks
                    .iter()
                    .filter(|c| !c.ok)
                    .map(|c| format!("{}: expected {}, got {}", c.check, c.expected, c.got))
                    .collect();
                let detail = e.error.clone().unwrap_or_else(|| bad.join("; "));
                println!("{:<28} {:<5} {detail}", e.id, e.status.to_uppercase());
            }
            println!("{} passed, {} failed", report.passed, report.failed);
        }
    }
    Ok(if report.failed == 0 { 0 } else { 3 })
}
