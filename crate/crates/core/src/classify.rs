//! The classification tree and the dimension of the point-symmetry algebra.

use crate::cases::SeqMember;
use crate::error::CoreError;
use crate::field::cross;
use crate::general::{General, Scaled};
use crate::invariants::{q, Engine};
use crate::ode::OdeCubic;
use cubic_ode_expr::kernel::{X, Y};
use cubic_ode_expr::{decide_zero, AssumptionSet, ProbeConfig, RatFn, ZeroVerdict};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

/// A zero verdict with its provenance, in serializable form.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    /// `zero`, `nonzero` or `unknown`.
    pub outcome: &'static str,
    /// `symbolic` when the normal form decided it, else `probed`.
    pub provenance: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<BTreeMap<String, String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub log10_abs: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold_log10: Option<f64>,
}

impl Verdict {
    pub fn new(v: &ZeroVerdict, value: &RatFn, assume: &AssumptionSet, cfg: &ProbeConfig) -> Self {
        let symbolic = match v {
            ZeroVerdict::Zero => true,
            _ => assume.apply(value).is_constant(),
        };
        let (outcome, witness, log10_abs, diagnostic) = match v {
            ZeroVerdict::Zero => ("zero", None, None, None),
            ZeroVerdict::NonZero { witness, log10_abs } => (
                "nonzero",
                Some(witness.iter().map(|(k, v)| (k.clone(), v.to_string())).collect()),
                Some(*log10_abs),
                None,
            ),
            ZeroVerdict::Unknown(d) => ("unknown", None, None, Some(d.clone())),
        };
        Verdict {
            outcome,
            provenance: if symbolic { "symbolic" } else { "probed" },
            witness: witness.filter(|w: &BTreeMap<String, String>| !w.is_empty()),
            log10_abs,
            diagnostic,
            samples: (!symbolic).then_some(cfg.points),
            threshold_log10: (!symbolic).then_some(cfg.threshold_log10),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.outcome == "zero"
    }

    pub fn is_unknown(&self) -> bool {
        self.outcome == "unknown"
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceEntry {
    /// The tested quantity, e.g. `F^5` or `K + 5/9`.
    pub predicate: String,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Case {
    MaximalDegeneration,
    General,
    Intermediate { case: u8, subcase: Option<u8> },
    Undecidable { predicate: String, diagnostic: String },
}

impl Case {
    /// `maximal`, `general`, `1.3`, `5`, `undecidable`.
    pub fn label(&self) -> String {
        match self {
            Case::MaximalDegeneration => "maximal".into(),
            Case::General => "general".into(),
            Case::Intermediate { case, subcase: Some(s) } => format!("{case}.{s}"),
            Case::Intermediate { case, subcase: None } => case.to_string(),
            Case::Undecidable { .. } => "undecidable".into(),
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Case::MaximalDegeneration => f.write_str("maximal degeneration"),
            Case::General => f.write_str("general case"),
            Case::Intermediate { .. } => write!(f, "intermediate degeneration, case {}", self.label()),
            Case::Undecidable { predicate, diagnostic } => write!(f, "undecidable at {predicate}: {diagnostic}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Dimension {
    /// One of 0, 1, 2, 3, 8; `None` when undecided.
    pub value: Option<u8>,
    /// Set when the verdict rests on a finite part of an invariant sequence.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub up_to_depth: Option<usize>,
    pub reason: String,
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value {
            Some(v) => write!(f, "{v}")?,
            None => f.write_str("unknown")?,
        }
        if let Some(d) = self.up_to_depth {
            write!(f, " (up to depth {d})")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassificationResult {
    pub case: Case,
    pub trace: Vec<TraceEntry>,
    pub dimension: Option<Dimension>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Independence {
    Independent,
    Dependent,
    Unknown,
}

fn vanish(v: &RatFn, assume: &AssumptionSet, cfg: &ProbeConfig) -> Option<bool> {
    match decide_zero(v, assume, cfg) {
        ZeroVerdict::Zero => Some(true),
        ZeroVerdict::NonZero { .. } => Some(false),
        ZeroVerdict::Unknown(_) => None,
    }
}

/// Both partial derivatives vanish; `None` when undecided.
pub fn is_constant(i: &RatFn, assume: &AssumptionSet, cfg: &ProbeConfig) -> Option<bool> {
    let i = assume.apply(i);
    if i.is_constant() {
        return Some(true);
    }
    for v in [X, Y] {
        match decide_zero(&i.diff(v), assume, cfg) {
            ZeroVerdict::Zero => {}
            ZeroVerdict::NonZero { .. } => return Some(false),
            ZeroVerdict::Unknown(_) => return None,
        }
    }
    Some(true)
}

/// Rank of the Jacobian of `(i1, i2)` with respect to `(x, y)`.
pub fn functional_independence(i1: &RatFn, i2: &RatFn, assume: &AssumptionSet, cfg: &ProbeConfig) -> Independence {
    let jac = i1.diff(X) * i2.diff(Y) - i1.diff(Y) * i2.diff(X);
    match decide_zero(&jac, assume, cfg) {
        ZeroVerdict::Zero => Independence::Dependent,
        ZeroVerdict::NonZero { .. } => Independence::Independent,
        ZeroVerdict::Unknown(_) => Independence::Unknown,
    }
}

enum Step {
    Yes,
    No,
    Stop,
}

struct Walker<'a> {
    engine: &'a mut Engine,
    trace: Vec<TraceEntry>,
    stop: Option<Case>,
}

impl<'a> Walker<'a> {
    /// Records `predicate` and reports whether `value` is zero.
    fn zero(&mut self, predicate: &str, value: Result<RatFn, CoreError>) -> Step {
        let value = match value {
            Ok(v) => v,
            Err(e) => {
                self.stop = Some(Case::Undecidable { predicate: predicate.into(), diagnostic: e.to_string() });
                return Step::Stop;
            }
        };
        let v = self.engine.test(&value);
        let verdict = Verdict::new(&v, &value, &self.engine.ode().assume, &self.engine.cfg);
        self.trace.push(TraceEntry { predicate: predicate.into(), verdict });
        match v {
            ZeroVerdict::Zero => Step::Yes,
            ZeroVerdict::NonZero { .. } => Step::No,
            ZeroVerdict::Unknown(d) => {
                self.stop = Some(Case::Undecidable { predicate: predicate.into(), diagnostic: d });
                Step::Stop
            }
        }
    }
}

macro_rules! test {
    ($w:expr, $name:expr, $value:expr) => {
        match $w.zero($name, $value) {
            Step::Yes => true,
            Step::No => false,
            Step::Stop => return $w.stop.take().unwrap(),
        }
    };
}

fn walk(w: &mut Walker) -> Case {
    let a = w.engine.a();
    let b = w.engine.b();
    let a_zero = test!(w, "A", Ok(a));
    if a_zero && test!(w, "B", Ok(b)) {
        return Case::MaximalDegeneration;
    }
    let f5 = w.engine.f5();
    if !test!(w, "F^5", Ok(f5)) {
        return Case::General;
    }
    let n = w.engine.n();
    let n_zero = test!(w, "N", n);
    let om = w.engine.omega_cap();
    let om_zero = test!(w, "Omega", om);
    if n_zero {
        if !om_zero {
            return Case::Intermediate { case: 6, subcase: None };
        }
        let th = w.engine.theta_cap();
        let sub = if test!(w, "Theta", th) { 2 } else { 1 };
        return Case::Intermediate { case: 7, subcase: Some(sub) };
    }
    let m = w.engine.m();
    if !test!(w, "M", m) {
        let z = w.engine.z();
        let z_zero = test!(w, "Z", z);
        let sub = match (om_zero, z_zero) {
            (false, false) => 1,
            (false, true) => 2,
            (true, false) => 3,
            (true, true) => 4,
        };
        return Case::Intermediate { case: 1, subcase: Some(sub) };
    }
    if !om_zero {
        return Case::Intermediate { case: 2, subcase: None };
    }
    let lam = w.engine.lambda();
    if !test!(w, "Lambda", lam) {
        return Case::Intermediate { case: 3, subcase: None };
    }
    let k = w.engine.k().map(|k| k + q(5, 9));
    if !test!(w, "K + 5/9", k) {
        return Case::Intermediate { case: 4, subcase: None };
    }
    Case::Intermediate { case: 5, subcase: None }
}

/// Walks the tree; branch predicates are recorded in order.
pub fn classify(engine: &mut Engine) -> ClassificationResult {
    let mut w = Walker { engine, trace: Vec::new(), stop: None };
    let case = walk(&mut w);
    ClassificationResult { case, trace: w.trace, dimension: None }
}

/// Classification followed by the symmetry dimension.
pub fn analyze(ode: &OdeCubic, cfg: ProbeConfig, depth: usize) -> (ClassificationResult, Engine) {
    let mut engine = Engine::new(ode, cfg);
    let mut r = classify(&mut engine);
    r.dimension = Some(symmetry_dimension(&mut engine, &r, depth));
    (r, engine)
}

fn undecided(reason: impl Into<String>) -> Dimension {
    Dimension { value: None, up_to_depth: None, reason: reason.into() }
}

fn fixed(v: u8, reason: impl Into<String>) -> Dimension {
    Dimension { value: Some(v), up_to_depth: None, reason: reason.into() }
}

pub fn symmetry_dimension(engine: &mut Engine, result: &ClassificationResult, depth: usize) -> Dimension {
    match dimension_inner(engine, result, depth) {
        Ok(d) => d,
        Err(e) => undecided(e.to_string()),
    }
}

fn all_constant(engine: &Engine, invs: &[(String, RatFn)]) -> Dimension {
    for (name, v) in invs {
        match is_constant(v, &engine.ode().assume, &engine.cfg) {
            Some(true) => {}
            Some(false) => return fixed(0, format!("{name} is not constant")),
            None => return undecided(format!("constancy of {name} undecided")),
        }
    }
    fixed(1, "all invariants of the case are constant")
}

fn dimension_inner(engine: &mut Engine, result: &ClassificationResult, depth: usize) -> Result<Dimension, CoreError> {
    Ok(match &result.case {
        Case::Undecidable { predicate, .. } => undecided(format!("classification undecided at {predicate}")),
        Case::MaximalDegeneration => fixed(8, "equivalent to y'' = 0"),
        Case::Intermediate { case: 5, .. } => fixed(3, "equivalent to y'' = 1/y^3"),
        Case::Intermediate { case: 2, .. } => {
            let inv = engine.case2()?;
            all_constant(engine, &inv)
        }
        Case::Intermediate { case: 3, .. } => {
            let inv = engine.case3()?;
            all_constant(engine, &inv)
        }
        Case::Intermediate { case: 4, .. } => {
            let inv = engine.case4()?;
            all_constant(engine, &inv)
        }
        Case::Intermediate { case: 6, .. } => {
            let inv = engine.case6()?;
            all_constant(engine, &inv)
        }
        Case::Intermediate { case: 7, .. } => {
            let l = engine.case7_l()?;
            match engine.test(&l) {
                ZeroVerdict::Zero => fixed(2, "L = 0"),
                ZeroVerdict::Unknown(d) => undecided(format!("L: {d}")),
                ZeroVerdict::NonZero { .. } => {
                    let inv = engine.case7()?;
                    match is_constant(&inv[0].1, &engine.ode().assume, &engine.cfg) {
                        Some(true) => fixed(1, "L != 0 and I1 is constant"),
                        Some(false) => fixed(0, "I1 is not constant"),
                        None => undecided("constancy of I1 undecided"),
                    }
                }
            }
        }
        Case::Intermediate { case: 1, .. } => {
            let roots = engine.case1_roots()?;
            let (assume, cfg) = (engine.ode().assume.clone(), engine.cfg.clone());
            let constant = |m: &SeqMember| is_constant(&m.value, &assume, &cfg);
            let indep = |a: &SeqMember, b: &SeqMember| functional_independence(&a.value, &b.value, &assume, &cfg);
            scan(roots, depth, |level| engine.case1_children(level), |m| m, constant, indep)?
        }
        Case::Intermediate { .. } => undecided("no such case"),
        Case::General => {
            let g = General::new(engine)?;
            let roots = g.roots();
            let (assume, cfg) = (engine.ode().assume.clone(), engine.cfg.clone());
            let constant = |m: &(SeqMember, Scaled)| {
                let grad = g.gradient(&m.1);
                vanish(&grad[0], &assume, &cfg).and_then(|z| if z { vanish(&grad[1], &assume, &cfg) } else { Some(false) })
            };
            let indep = |a: &(SeqMember, Scaled), b: &(SeqMember, Scaled)| {
                let (u, v) = (g.gradient(&a.1), g.gradient(&b.1));
                match vanish(&cross(&u, &v), &assume, &cfg) {
                    Some(true) => Independence::Dependent,
                    Some(false) => Independence::Independent,
                    None => Independence::Unknown,
                }
            };
            scan(roots, depth, |level: &[(SeqMember, Scaled)]| Ok(g.children(level)), |m| &m.0, constant, indep)?
        }
    })
}

/// Breadth-first scan of an invariant sequence for a non-constant member
/// and a second member independent of it.
fn scan<T: Clone>(
    roots: Vec<T>,
    depth: usize,
    mut next: impl FnMut(&[T]) -> Result<Vec<T>, CoreError>,
    member: impl Fn(&T) -> &SeqMember,
    constant: impl Fn(&T) -> Option<bool>,
    independent: impl Fn(&T, &T) -> Independence,
) -> Result<Dimension, CoreError> {
    let mut level = roots;
    let mut reference: Option<T> = None;
    for d in 0..=depth {
        for t in &level {
            let m = member(t);
            match &reference {
                None => match constant(t) {
                    Some(true) => {}
                    Some(false) => reference = Some(t.clone()),
                    None => return Ok(undecided(format!("constancy of {} undecided", m.name))),
                },
                Some(r) => match independent(r, t) {
                    Independence::Dependent => {}
                    Independence::Independent => {
                        let r = member(r);
                        return Ok(fixed(0, format!("{} and {} are functionally independent", r.name, m.name)));
                    }
                    Independence::Unknown => {
                        let r = member(r);
                        return Ok(undecided(format!("independence of {} and {} undecided", r.name, m.name)));
                    }
                },
            }
        }
        if d < depth {
            level = next(&level)?;
        }
    }
    Ok(match reference {
        None => Dimension { value: Some(2), up_to_depth: Some(depth), reason: "all invariants are constant".into() },
        Some(r) => Dimension {
            value: Some(1),
            up_to_depth: Some(depth),
            reason: format!("every invariant depends on {}", member(&r).name),
        },
    })
}
