//! Report types shared by the subcommands.

use cubic_ode_core::classify::ClassificationResult;
use cubic_ode_core::equivalence::EquivalenceResult;
use cubic_ode_core::general::General;
use cubic_ode_core::{Case, Engine};
use cubic_ode_expr::{ProbeConfig, RatFn};
use serde::Serialize;
use std::collections::BTreeMap;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
pub struct Input {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<String>,
    /// The equation as parsed, `y'` written `yp`.
    pub normalized: String,
}

#[derive(Serialize)]
pub struct Probe {
    pub seed: u64,
    pub points: usize,
    pub digits: usize,
    pub threshold_log10: f64,
}

impl From<&ProbeConfig> for Probe {
    fn from(c: &ProbeConfig) -> Self {
        Probe { seed: c.seed, points: c.points, digits: c.digits, threshold_log10: c.threshold_log10 }
    }
}

#[derive(Serialize)]
pub struct Quantity {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight: Option<i32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branch: Option<&'static str>,
    pub value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
}

#[derive(Serialize)]
pub struct Transform {
    pub x_new: String,
    pub y_new: String,
    pub jacobian: String,
    /// False when no inverse was given and the coefficients are in `x, y`.
    pub in_new_variables: bool,
    pub equation: String,
    pub coefficients: BTreeMap<&'static str, String>,
}

#[derive(Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: &'static str,
    pub input: Input,
    pub assumptions: Vec<String>,
    pub probe: Probe,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<ClassificationResult>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub equivalence: Vec<EquivalenceResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transform: Option<Transform>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub quantities: Vec<Quantity>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub invariants: Vec<Quantity>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

pub fn show(r: &RatFn) -> String {
    r.to_expr().to_string()
}

/// Every cached quantity of the engine, in computation order.
pub fn quantities(engine: &Engine) -> Vec<Quantity> {
    engine
        .slots()
        .map(|(name, s)| Quantity {
            name: name.to_string(),
            weight: s.weight,
            branch: s.branch.map(|b| b.label()),
            value: show(&s.value),
            verdict: s.verdict.as_ref().map(|v| v.to_string()),
        })
        .collect()
}

/// The base invariants of the equation's case.
pub fn case_invariants(engine: &mut Engine, case: &Case) -> Vec<Quantity> {
    let named = match case {
        Case::Intermediate { case: 1, .. } => engine.case1_named(),
        Case::Intermediate { case: 2, .. } => engine.case2(),
        Case::Intermediate { case: 3, .. } => engine.case3(),
        Case::Intermediate { case: 4, .. } => engine.case4(),
        Case::Intermediate { case: 6, .. } => engine.case6(),
        Case::Intermediate { case: 7, .. } => engine.case7(),
        Case::General => General::new(engine).map(|g| {
            g.roots().into_iter().map(|(m, s)| (format!("{} (times F^{})", m.name, s.e), s.r)).collect()
        }),
        _ => Ok(Vec::new()),
    };
    named
        .unwrap_or_default()
        .into_iter()
        .map(|(name, v)| Quantity { name, weight: Some(0), branch: None, value: show(&v), verdict: None })
        .collect()
}

fn verdict_line(r: &EquivalenceResult) -> String {
    let mut s = format!("{}: {:?}", r.target, r.verdict);
    if let Some(c) = &r.failed_condition {
        s += &format!(" (failed at {c})");
    }
    s
}

/// Plain-text rendering.
pub fn text(r: &Report) -> String {
    let mut out = format!("equation: {}\n", r.input.normalized);
    if !r.assumptions.is_empty() {
        out += &format!("assumptions: {}\n", r.assumptions.join(", "));
    }
    if let Some(c) = &r.classification {
        out += &format!("case: {}\n", c.case);
        if let Some(d) = &c.dimension {
            out += &format!("symmetry dimension: {d} ({})\n", d.reason);
        }
        for t in &c.trace {
            out += &format!("  {} -> {} [{}]\n", t.predicate, t.verdict.outcome, t.verdict.provenance);
        }
    }
    for e in &r.equivalence {
        out += &format!("{}\n", verdict_line(e));
        for c in &e.conditions {
            let holds = match c.holds {
                Some(true) => "holds",
                Some(false) => "fails",
                None => "undecided",
            };
            out += &format!("  {} {}: {holds}\n", c.name, c.requirement);
        }
        if let Some(t) = &e.transform {
            out += &format!("  x~ = {}\n  y~ = {}\n", t.x_new, t.y_new);
        }
        for (k, v) in &e.parameters {
            out += &format!("  {k}~ in {{{}}}\n", v.join(", "));
        }
        if let Some(d) = &e.diagnostic {
            out += &format!("  note: {d}\n");
        }
    }
    if let Some(t) = &r.transform {
        out += &format!("x~ = {}\ny~ = {}\n", t.x_new, t.y_new);
        let vars = if t.in_new_variables { "new variables" } else { "old variables" };
        out += &format!("transformed ({vars}): {}\n", t.equation);
    }
    for (title, list) in [("invariants", &r.invariants), ("quantities", &r.quantities)] {
        if !list.is_empty() {
            out += &format!("{title}:\n");
            for q in list {
                out += &format!("  {} = {}\n", q.name, q.value);
            }
        }
    }
    if let Some(ms) = r.timing_ms {
        out += &format!("time: {ms} ms\n");
    }
    out
}
