//! Equivalence tests against Painlevé I, II, III with three zero parameters,
//! and the necessary conditions for Painlevé IV.

use crate::catalog::{painleve, Family};
use crate::classify::{functional_independence, is_constant, Independence, Verdict};
use crate::error::CoreError;
use crate::invariants::{q, Engine};
use crate::ode::{transformed_coefficients, OdeCubic, PointMap};
use cubic_ode_expr::{decide_zero, ProbeConfig, RatFn, ZeroVerdict};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    P1,
    P2,
    #[serde(rename = "p3zero")]
    P3Zero,
    #[serde(rename = "p4")]
    P4Necessary,
}

impl Target {
    pub const ALL: [Target; 4] = [Target::P1, Target::P2, Target::P3Zero, Target::P4Necessary];

    pub fn name(self) -> &'static str {
        match self {
            Target::P1 => "p1",
            Target::P2 => "p2",
            Target::P3Zero => "p3zero",
            Target::P4Necessary => "p4",
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Target {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<Self, CoreError> {
        match s.to_ascii_lowercase().as_str() {
            "p1" => Ok(Target::P1),
            "p2" => Ok(Target::P2),
            "p3zero" | "p3-zero" | "p3" => Ok(Target::P3Zero),
            "p4" | "p4necessary" => Ok(Target::P4Necessary),
            _ => Err(CoreError::UnknownFamily(s.into())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Equivalent,
    NotEquivalent,
    NecessaryPass,
    NecessaryFail,
    Undecidable,
}

/// One tested condition of an equivalence check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Condition {
    pub name: String,
    /// `= 0`, `!= 0`, `= 18/5`, `constant`, `independent`.
    pub requirement: String,
    /// `None` when undecided.
    pub holds: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Outcome of comparing a transformed equation with its target.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub closes: bool,
    /// Verdicts on the differences of `P, Q, R, S`.
    pub residuals: Vec<Verdict>,
}

/// A point map offered by an equivalence check, with its sign choices.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Candidate {
    #[serde(skip)]
    pub map: PointMap,
    pub x_new: String,
    pub y_new: String,
    pub signs: String,
    pub parameters: BTreeMap<String, String>,
    pub check: Option<VerifyReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquivalenceResult {
    pub target: Target,
    pub verdict: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed_condition: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
    pub conditions: Vec<Condition>,
    /// The first candidate whose check closes; only with `Equivalent`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transform: Option<Candidate>,
    pub candidates: Vec<Candidate>,
    /// Recovered parameters with every admissible value, e.g. `a: [1/2, -1/2]`.
    pub parameters: BTreeMap<String, Vec<String>>,
}

fn show(r: &RatFn) -> String {
    r.to_expr().to_string()
}

fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

enum Flow {
    Pass,
    Fail,
    Stop,
}

struct Checker<'a> {
    e: &'a mut Engine,
    conds: Vec<Condition>,
    failed: Option<String>,
    diagnostic: Option<String>,
    undecided: bool,
}

impl<'a> Checker<'a> {
    fn new(e: &'a mut Engine) -> Self {
        Checker { e, conds: Vec::new(), failed: None, diagnostic: None, undecided: false }
    }

    fn record(&mut self, name: &str, requirement: &str, holds: Option<bool>, verdict: Option<Verdict>, note: Option<String>) -> Flow {
        self.conds.push(Condition { name: name.into(), requirement: requirement.into(), holds, verdict, note: note.clone() });
        match holds {
            Some(true) => Flow::Pass,
            Some(false) => {
                self.failed.get_or_insert_with(|| name.to_string());
                Flow::Fail
            }
            None => {
                if self.failed.is_none() {
                    self.failed = Some(name.into());
                    self.diagnostic = note;
                    self.undecided = true;
                }
                Flow::Stop
            }
        }
    }

    /// `value = 0` when `want_zero`, else `value != 0`.
    fn zero(&mut self, name: &str, want_zero: bool, value: Result<RatFn, CoreError>) -> Flow {
        let req = if want_zero { "= 0" } else { "!= 0" };
        self.equals(name, req, want_zero, value)
    }

    fn equals(&mut self, name: &str, req: &str, want_zero: bool, value: Result<RatFn, CoreError>) -> Flow {
        let value = match value {
            Ok(v) => v,
            Err(e) => return self.record(name, req, None, None, Some(e.to_string())),
        };
        let v = self.e.test(&value);
        let verdict = Verdict::new(&v, &value, &self.e.ode().assume, &self.e.cfg);
        let (holds, note) = match &v {
            ZeroVerdict::Zero => (Some(want_zero), None),
            ZeroVerdict::NonZero { .. } => (Some(!want_zero), None),
            ZeroVerdict::Unknown(d) => (None, Some(d.clone())),
        };
        self.record(name, req, holds, Some(verdict), note)
    }

    fn a_or_b(&mut self) -> Flow {
        let (a, b) = (self.e.a(), self.e.b());
        match self.e.test(&a) {
            ZeroVerdict::Zero => self.zero("A or B", false, Ok(b)),
            _ => self.zero("A or B", false, Ok(a)),
        }
    }

    fn constant(&mut self, name: &str, value: Result<RatFn, CoreError>) -> Flow {
        match value {
            Err(e) => self.record(name, "constant", None, None, Some(e.to_string())),
            Ok(v) => {
                let c = is_constant(&v, &self.e.ode().assume, &self.e.cfg);
                let note = c.is_none().then(|| "constancy undecided".to_string());
                self.record(name, "constant", c, None, note)
            }
        }
    }

    fn independent(&mut self, name: &str, pairs: &[(RatFn, RatFn)]) -> Flow {
        let mut unknown = false;
        for (u, v) in pairs {
            match functional_independence(u, v, &self.e.ode().assume, &self.e.cfg) {
                Independence::Independent => return self.record(name, "independent", Some(true), None, None),
                Independence::Unknown => unknown = true,
                Independence::Dependent => {}
            }
        }
        if unknown {
            self.record(name, "independent", None, None, Some("Jacobian undecided".into()))
        } else {
            self.record(name, "independent", Some(false), None, None)
        }
    }

    fn finish(self, target: Target) -> EquivalenceResult {
        let verdict = if self.undecided {
            Outcome::Undecidable
        } else {
            match (target, self.failed.is_some()) {
                (Target::P4Necessary, false) => Outcome::NecessaryPass,
                (Target::P4Necessary, true) => Outcome::NecessaryFail,
                (_, false) => Outcome::Equivalent,
                (_, true) => Outcome::NotEquivalent,
            }
        };
        EquivalenceResult {
            target,
            verdict,
            failed_condition: self.failed,
            diagnostic: self.diagnostic,
            conditions: self.conds,
            transform: None,
            candidates: Vec::new(),
            parameters: BTreeMap::new(),
        }
    }
}

macro_rules! need {
    ($c:expr, $flow:expr, $target:expr) => {
        match $flow {
            Flow::Pass => {}
            Flow::Fail | Flow::Stop => return $c.finish($target),
        }
    };
}

/// The common head of every equivalence check: `F = 0`, `A != 0 or B != 0`, `Omega = 0`.
fn head(c: &mut Checker) -> Flow {
    let f5 = c.e.f5();
    match c.zero("F", true, Ok(f5)) {
        Flow::Pass => {}
        other => return other,
    }
    match c.a_or_b() {
        Flow::Pass => {}
        other => return other,
    }
    let om = c.e.omega_cap();
    c.zero("Omega", true, om)
}

pub fn check(target: Target, engine: &mut Engine) -> EquivalenceResult {
    match target {
        Target::P1 => check_p1(engine),
        Target::P2 => check_p2(engine),
        Target::P3Zero => check_p3zero(engine),
        Target::P4Necessary => check_p4_necessary(engine),
    }
}

pub fn check_p1(engine: &mut Engine) -> EquivalenceResult {
    let t = Target::P1;
    let mut c = Checker::new(engine);
    need!(c, head(&mut c), t);
    let n = c.e.n();
    need!(c, c.zero("N", true, n), t);
    let wv = c.e.case7_wv();
    let (w, v) = match wv {
        Ok([w, v]) => (Ok(w), Ok(v)),
        Err(e) => (Err(e.clone()), Err(e)),
    };
    need!(c, c.zero("W", true, w), t);
    need!(c, c.zero("V", true, v), t);
    let th = c.e.theta_cap();
    need!(c, c.zero("Theta", false, th), t);
    let l1 = c.e.case7_l1();
    need!(c, c.zero("L1", false, l1), t);
    let inv = match c.e.case7() {
        Ok(v) => v,
        Err(e) => {
            c.record("I1, I2", "independent", None, None, Some(e.to_string()));
            return c.finish(t);
        }
    };
    let (i1, i2) = (inv[0].1.clone(), inv[1].1.clone());
    need!(c, c.independent("I1, I2", &[(i1.clone(), i2.clone())]), t);
    let mut r = c.finish(t);
    let cfg = engine.cfg.clone();
    r.candidates = p1_candidates(engine.ode(), &i1, &i2, &cfg);
    settle(&mut r);
    r
}

/// These conditions are necessary; equivalence also needs one of
/// its candidate maps to close.
fn settle(r: &mut EquivalenceResult) {
    r.transform = r.candidates.iter().find(|k| k.check.as_ref().is_some_and(|v| v.closes)).cloned();
    if r.transform.is_some() {
        return;
    }
    let definite = r
        .candidates
        .iter()
        .all(|k| k.check.as_ref().is_some_and(|v| v.residuals.iter().all(|x| !x.is_unknown())));
    let (holds, verdict, note) = if definite {
        (Some(false), Outcome::NotEquivalent, "no candidate map closes")
    } else {
        (None, Outcome::Undecidable, "no candidate map closes on the real probe domain")
    };
    r.conditions.push(Condition {
        name: "transform".into(),
        requirement: "closes".into(),
        holds,
        verdict: None,
        note: Some(note.into()),
    });
    r.verdict = verdict;
    r.failed_condition = Some("transform".into());
    r.diagnostic = Some(note.into());
}

/// `x~ = (12 I1)^(-1/5)`, `y~ = +-sqrt(I2 x~ / 12)`.
fn p1_candidates(ode: &OdeCubic, i1: &RatFn, i2: &RatFn, cfg: &ProbeConfig) -> Vec<Candidate> {
    let xt = match (i1 * 12).pow_rat(&rational(-1, 5)) {
        Ok(v) => v,
        Err(e) => return vec![failed_candidate("", e.to_string())],
    };
    let y2 = i2 * &xt * q(1, 12);
    let yt = match y2.sqrt() {
        Ok(v) => v,
        Err(e) => return vec![failed_candidate("", e.to_string())],
    };
    let target = painleve(Family::P1, &[]).expect("catalog");
    [("+", 1), ("-", -1)]
        .into_iter()
        .map(|(s, k)| {
            let map = PointMap::new(xt.clone(), &yt * k);
            candidate(ode, map, s, BTreeMap::new(), &target, cfg)
        })
        .collect()
}

fn failed_candidate(signs: &str, note: String) -> Candidate {
    Candidate {
        map: PointMap::identity(),
        x_new: String::new(),
        y_new: String::new(),
        signs: signs.into(),
        parameters: BTreeMap::new(),
        check: None,
        note: Some(note),
    }
}

fn candidate(
    ode: &OdeCubic,
    map: PointMap,
    signs: &str,
    parameters: BTreeMap<String, String>,
    target: &OdeCubic,
    cfg: &ProbeConfig,
) -> Candidate {
    let (check, note) = match verify_transform(ode, &map, target, cfg) {
        Ok(r) => (Some(r), None),
        Err(e) => (None, Some(e.to_string())),
    };
    Candidate { x_new: show(&map.xt), y_new: show(&map.yt), map, signs: signs.into(), parameters, check, note }
}

/// Transforms `ode` by `map` and compares it with `target`, an equation in
/// the new variables.
pub fn verify_transform(ode: &OdeCubic, map: &PointMap, target: &OdeCubic, cfg: &ProbeConfig) -> Result<VerifyReport, CoreError> {
    let got = transformed_coefficients(ode, map)?;
    let mut residuals = Vec::with_capacity(4);
    let mut closes = true;
    for (g, t) in got.iter().zip(target.coeffs()) {
        let diff = g - &map.pull_back(t)?;
        let v = decide_zero(&diff, &ode.assume, cfg);
        closes &= v.is_zero();
        residuals.push(Verdict::new(&v, &diff, &ode.assume, cfg));
    }
    Ok(VerifyReport { closes, residuals })
}

pub fn check_p2(engine: &mut Engine) -> EquivalenceResult {
    let t = Target::P2;
    let mut c = Checker::new(engine);
    need!(c, head(&mut c), t);
    let m = c.e.m();
    need!(c, c.zero("M", false, m), t);
    let base = match c.e.case1_base() {
        Ok(b) => b,
        Err(e) => {
            c.record("I1", "= 18/5", None, None, Some(e.to_string()));
            return c.finish(t);
        }
    };
    need!(c, c.equals("I1", "= 18/5", true, Ok(&base[0] - q(18, 5))), t);
    let i9 = c.e.case1_i9();
    need!(c, c.zero("I9", false, i9.clone()), t);
    let (i3, i6, i9) = match (c.e.case1_i6(), i9) {
        (Ok(i6), Ok(i9)) => (base[2].clone(), i6, i9),
        (Err(e), _) | (_, Err(e)) => {
            c.record("J", "constant", None, None, Some(e.to_string()));
            return c.finish(t);
        }
    };
    let num = &i6 * 10 - &i3 * 60 + 4;
    let j2 = &num * &num / (&i9 * 2500);
    need!(c, c.constant("J", Ok(j2.clone())), t);
    let pairs = [(i3.clone(), i6.clone()), (i3.clone(), i9.clone()), (i6.clone(), i9.clone())];
    need!(c, c.independent("I3, I6, I9", &pairs), t);
    let mut r = c.finish(t);
    let cfg = engine.cfg.clone();
    let assume = engine.ode().assume.clone();
    let j2 = assume.apply(&j2);
    match j2.sqrt() {
        Ok(j) => {
            let mut values = vec![show(&j), show(&-&j)];
            values.dedup();
            r.parameters.insert("a".into(), values);
            r.candidates = p2_candidates(engine.ode(), &i6, &i9, &j, &cfg);
        }
        Err(e) => {
            r.parameters.insert("a".into(), vec![format!("+-sqrt({})", show(&j2))]);
            r.candidates = vec![failed_candidate("", e.to_string())];
        }
    }
    settle(&mut r);
    r
}

/// `y~ = s/r`, `x~ = 5 I6/r^2 - (3/2) t J s r` with `r = (2500 I9)^(1/6)` and
/// signs `s`, `t`; the parameter is read off the transformed equation.
fn p2_candidates(ode: &OdeCubic, i6: &RatFn, i9: &RatFn, j: &RatFn, cfg: &ProbeConfig) -> Vec<Candidate> {
    let r = match (i9 * 2500).pow_rat(&rational(1, 6)) {
        Ok(v) => v,
        Err(e) => return vec![failed_candidate("", e.to_string())],
    };
    let mut out = Vec::new();
    for (ss, s) in [("+", 1i64), ("-", -1)] {
        for (ts, tt) in [("+", 1i64), ("-", -1)] {
            let yt = RatFn::from_int(s) / &r;
            let xt = i6 * 5 / (&r * &r) - j * &r * q(3 * s * tt, 2);
            let map = PointMap::new(xt, yt);
            let signs = format!("root {ss}, J {ts}");
            // Read the parameter off when it normalizes to a constant, else try +-J.
            let options = match p2_parameter(ode, &map) {
                Ok(a) => vec![a],
                Err(_) => vec![j.clone(), -j],
            };
            let mut best = None;
            for a in options {
                let target = painleve(Family::P2, std::slice::from_ref(&a)).expect("catalog");
                let params = BTreeMap::from([("a".to_string(), show(&a))]);
                let k = candidate(ode, map.clone(), &signs, params, &target, cfg);
                let closes = k.check.as_ref().is_some_and(|v| v.closes);
                if closes || best.is_none() {
                    best = Some(k);
                }
                if closes {
                    break;
                }
            }
            out.extend(best);
        }
    }
    out
}

/// `P~ - 2 y~^3 - x~ y~` of the transformed equation.
fn p2_parameter(ode: &OdeCubic, map: &PointMap) -> Result<RatFn, CoreError> {
    let got = transformed_coefficients(ode, map)?;
    let a = &got[0] - map.yt.powi(3) * 2 - &map.xt * &map.yt;
    let a = ode.assume.apply(&a);
    if a.depends_on(cubic_ode_expr::kernel::X) || a.depends_on(cubic_ode_expr::kernel::Y) {
        return Err(CoreError::Precondition("transformed equation has a non-constant free term".into()));
    }
    Ok(a)
}

pub fn check_p3zero(engine: &mut Engine) -> EquivalenceResult {
    let t = Target::P3Zero;
    let mut c = Checker::new(engine);
    need!(c, head(&mut c), t);
    let m = c.e.m();
    need!(c, c.zero("M", false, m), t);
    let base = match c.e.case1_base() {
        Ok(b) => b,
        Err(e) => {
            c.record("I1", "= 3/5", None, None, Some(e.to_string()));
            return c.finish(t);
        }
    };
    need!(c, c.equals("I1", "= 3/5", true, Ok(&base[0] - q(3, 5))), t);
    need!(c, c.equals("I3", "= 1/15", true, Ok(&base[2] - q(1, 15))), t);
    c.finish(t)
}

/// Necessary conditions only; `K0` and `Kn` are both reported whenever the
/// case-1 sequence exists, and one of them vanishing suffices.
pub fn check_p4_necessary(engine: &mut Engine) -> EquivalenceResult {
    let t = Target::P4Necessary;
    let mut c = Checker::new(engine);
    need!(c, head(&mut c), t);
    let m = c.e.m();
    need!(c, c.zero("M", false, m), t);
    let z = c.e.z();
    let z_ok = c.zero("Z", false, z);
    if let Flow::Stop = z_ok {
        return c.finish(t);
    }
    let k0 = c.e.k0();
    let kn = c.e.kn();
    let (failed, undecided, diag) = (c.failed.clone(), c.undecided, c.diagnostic.clone());
    let f0 = c.zero("K0", true, k0);
    let f1 = c.zero("Kn", true, kn);
    // The two polynomials are alternatives: restore the state and combine.
    c.failed = failed;
    c.undecided = undecided;
    c.diagnostic = diag;
    match (f0, f1) {
        (Flow::Pass, _) | (_, Flow::Pass) => {}
        (Flow::Fail, Flow::Fail) => {
            c.failed.get_or_insert_with(|| "K0, Kn".into());
        }
        _ => {
            if c.failed.is_none() {
                c.failed = Some("K0, Kn".into());
                c.diagnostic = Some("condition polynomial undecided".into());
                c.undecided = true;
            }
        }
    }
    c.finish(t)
}
