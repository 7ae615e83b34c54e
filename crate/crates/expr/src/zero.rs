//! Zero decision: exact on the normal form, probabilistic otherwise.

use crate::error::ExprError;
use crate::expr::Expr;
use crate::kernel;
use crate::mono::Var;
use crate::numeric::{log10_abs, Evaluator};
use crate::ratfn::RatFn;
use astro_float::BigFloat;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Predicate {
    NonZero,
    Positive,
    Equals(BigRational),
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicate::NonZero => write!(f, "!=0"),
            Predicate::Positive => write!(f, ">0"),
            Predicate::Equals(q) => write!(f, "={}", q),
        }
    }
}

/// Side conditions on parameters.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AssumptionSet {
    items: Vec<(String, Predicate)>,
}

impl AssumptionSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn items(&self) -> &[(String, Predicate)] {
        &self.items
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Adds a predicate, rejecting contradictions with those already present.
    pub fn add(&mut self, name: &str, p: Predicate) -> Result<(), String> {
        for (n, q) in &self.items {
            if n != name {
                continue;
            }
            let clash = match (q, &p) {
                (Predicate::Equals(a), Predicate::Equals(b)) => a != b,
                (Predicate::Equals(a), Predicate::NonZero) | (Predicate::NonZero, Predicate::Equals(a)) => a.is_zero(),
                (Predicate::Equals(a), Predicate::Positive) | (Predicate::Positive, Predicate::Equals(a)) => !a.is_positive(),
                _ => false,
            };
            if clash {
                return Err(format!("contradictory assumptions on `{}`: {}{} and {}{}", name, n, q, name, p));
            }
        }
        if !self.items.iter().any(|(n, q)| n == name && *q == p) {
            self.items.push((name.to_string(), p));
        }
        Ok(())
    }

    pub fn with(mut self, name: &str, p: Predicate) -> Self {
        self.add(name, p).expect("consistent assumptions");
        self
    }

    /// Parses `a!=0`, `a>0` or `a=3/2`.
    pub fn parse_item(&mut self, s: &str) -> Result<(), String> {
        let s = s.trim();
        let (name, pred) = if let Some(n) = s.strip_suffix("!=0") {
            (n, Predicate::NonZero)
        } else if let Some(n) = s.strip_suffix(">0") {
            (n, Predicate::Positive)
        } else if let Some((n, v)) = s.split_once('=') {
            let e = crate::parse::parse_expr(v).map_err(|e| e.to_string())?;
            let q = e
                .to_ratfn()
                .ok()
                .and_then(|r| r.as_rational())
                .ok_or_else(|| format!("assumption value `{}` is not a rational constant", v))?;
            (n, Predicate::Equals(q))
        } else {
            return Err(format!("cannot parse assumption `{}` (expected name!=0, name>0 or name=value)", s));
        };
        let name = name.trim();
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(format!("bad parameter name in assumption `{}`", s));
        }
        self.add(name, pred)
    }

    pub fn equalities(&self) -> impl Iterator<Item = (&str, &BigRational)> {
        self.items.iter().filter_map(|(n, p)| match p {
            Predicate::Equals(q) => Some((n.as_str(), q)),
            _ => None,
        })
    }

    fn constraint(&self, name: &str) -> (bool, bool) {
        let mut nonzero = false;
        let mut positive = false;
        for (n, p) in &self.items {
            if n == name {
                match p {
                    Predicate::NonZero => nonzero = true,
                    Predicate::Positive => positive = true,
                    Predicate::Equals(_) => {}
                }
            }
        }
        (nonzero, positive)
    }

    /// Substitutes the `equals` assumptions.
    pub fn apply(&self, r: &RatFn) -> RatFn {
        let mut map = HashMap::new();
        for (n, q) in self.equalities() {
            if let Some(v) = kernel::find_symbol(n) {
                map.insert(v, RatFn::from_rational(q));
            }
        }
        if map.is_empty() {
            return r.clone();
        }
        r.subs(&map).unwrap_or_else(|_| r.clone())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ZeroVerdict {
    Zero,
    /// A sample point (exact rationals) where the value is clearly nonzero.
    NonZero { witness: BTreeMap<String, BigRational>, log10_abs: f64 },
    Unknown(String),
}

impl ZeroVerdict {
    pub fn is_zero(&self) -> bool {
        matches!(self, ZeroVerdict::Zero)
    }

    pub fn is_nonzero(&self) -> bool {
        matches!(self, ZeroVerdict::NonZero { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, ZeroVerdict::Unknown(_))
    }

    /// `Some(true)` for zero, `Some(false)` for nonzero.
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            ZeroVerdict::Zero => Some(true),
            ZeroVerdict::NonZero { .. } => Some(false),
            ZeroVerdict::Unknown(_) => None,
        }
    }
}

impl fmt::Display for ZeroVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZeroVerdict::Zero => write!(f, "zero"),
            ZeroVerdict::NonZero { witness, log10_abs } => {
                let pts: Vec<String> = witness.iter().map(|(k, v)| format!("{}={}", k, v)).collect();
                write!(f, "nonzero at ({}), |value| ~ 1e{:.1}", pts.join(", "), log10_abs)
            }
            ZeroVerdict::Unknown(d) => write!(f, "unknown: {}", d),
        }
    }
}

/// Sampling parameters for numerical probing.
#[derive(Clone, Debug)]
pub struct ProbeConfig {
    pub seed: u64,
    pub points: usize,
    pub digits: usize,
    /// Values with `log10|v|` above this count as nonzero.
    pub threshold_log10: f64,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig { seed: 0, points: 16, digits: 50, threshold_log10: -30.0 }
    }
}

/// Random rational sample points for the symbols of an expression.
pub struct Sampler {
    rng: ChaCha8Rng,
    first: bool,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), first: true }
    }

    /// Next point; the first one sets every symbol to 1.
    pub fn next_point(&mut self, names: &[String], assume: &AssumptionSet) -> BTreeMap<String, BigRational> {
        let first = std::mem::replace(&mut self.first, false);
        names
            .iter()
            .map(|n| {
                let (_, positive) = assume.constraint(n);
                let q = if first {
                    BigRational::from_integer(BigInt::from(1))
                } else {
                    let mut a: i64 = 0;
                    while a == 0 {
                        a = self.rng.gen_range(-60..=60);
                    }
                    if positive {
                        a = a.abs();
                    }
                    let b: i64 = self.rng.gen_range(1..=11);
                    BigRational::new(BigInt::from(a), BigInt::from(b))
                };
                (n.clone(), q)
            })
            .collect()
    }
}

pub fn decide_zero(r: &RatFn, assume: &AssumptionSet, cfg: &ProbeConfig) -> ZeroVerdict {
    let r = assume.apply(r);
    if r.is_zero() {
        return ZeroVerdict::Zero;
    }
    if r.is_constant() {
        let q = r.as_rational().unwrap();
        let v = q.numer().to_string().len() as f64 - q.denom().to_string().len() as f64;
        return ZeroVerdict::NonZero { witness: BTreeMap::new(), log10_abs: v };
    }
    let syms: Vec<Var> = r.symbols().into_iter().collect();
    let names: Vec<String> = syms.iter().map(|&v| kernel::name(v)).collect();
    let mut sampler = Sampler::new(cfg.seed);
    let mut ev = Evaluator::new(cfg.digits + 20);
    let mut good = 0;
    let mut attempts = 0;
    let mut largest = f64::NEG_INFINITY;
    while good < cfg.points && attempts < cfg.points * 20 {
        attempts += 1;
        let pt = sampler.next_point(&names, assume);
        let fp: HashMap<Var, BigFloat> = syms.iter().zip(&names).map(|(&v, n)| (v, ev.rational(&pt[n]))).collect();
        let val = match ev.eval_ratfn(&r, &fp) {
            Ok(v) => v,
            Err(_) => continue,
        };
        good += 1;
        let l = log10_abs(&val);
        if l > cfg.threshold_log10 {
            return ZeroVerdict::NonZero { witness: pt, log10_abs: l };
        }
        largest = largest.max(l);
    }
    if good == 0 {
        return ZeroVerdict::Unknown(format!("no admissible sample point in {} attempts", attempts));
    }
    ZeroVerdict::Unknown(format!(
        "normal form is not literally zero but all {} probes are below 1e{} (largest ~1e{:.1})",
        good, cfg.threshold_log10, largest
    ))
}

pub fn decide_zero_expr(e: &Expr, assume: &AssumptionSet, cfg: &ProbeConfig) -> Result<ZeroVerdict, ExprError> {
    Ok(decide_zero(&e.to_ratfn()?, assume, cfg))
}

/// Largest `log10|r|` over sample points, for residual reports.
pub fn probe_max(r: &RatFn, assume: &AssumptionSet, cfg: &ProbeConfig) -> Option<f64> {
    let r = assume.apply(r);
    if r.is_zero() {
        return Some(f64::NEG_INFINITY);
    }
    let syms: Vec<Var> = r.symbols().into_iter().collect();
    let names: Vec<String> = syms.iter().map(|&v| kernel::name(v)).collect();
    let mut sampler = Sampler::new(cfg.seed);
    let mut ev = Evaluator::new(cfg.digits + 20);
    let mut good = 0;
    let mut largest = f64::NEG_INFINITY;
    for _ in 0..cfg.points * 20 {
        if good >= cfg.points {
            break;
        }
        let pt = sampler.next_point(&names, assume);
        let fp: HashMap<Var, BigFloat> = syms.iter().zip(&names).map(|(&v, n)| (v, ev.rational(&pt[n]))).collect();
        if let Ok(v) = ev.eval_ratfn(&r, &fp) {
            good += 1;
            largest = largest.max(log10_abs(&v));
        }
    }
    if good == 0 {
        None
    } else {
        Some(largest)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_expr;

    fn rf(s: &str) -> RatFn {
        parse_expr(s).unwrap().to_ratfn().unwrap()
    }

    #[test]
    fn verdicts() {
        let cfg = ProbeConfig::default();
        let a = AssumptionSet::new();
        assert_eq!(decide_zero(&RatFn::zero(), &a, &cfg), ZeroVerdict::Zero);
        match decide_zero(&rf("-12*x"), &a, &cfg) {
            ZeroVerdict::NonZero { witness, .. } => assert_eq!(witness["x"], BigRational::from_integer(1.into())),
            v => panic!("{:?}", v),
        }
        let b = AssumptionSet::new().with("m", Predicate::Equals(BigRational::from_integer(0.into())));
        assert_eq!(decide_zero(&rf("m*x"), &b, &cfg), ZeroVerdict::Zero);
    }

    #[test]
    fn tiny_values_are_unknown() {
        let cfg = ProbeConfig::default();
        let near = rf("x").scale(&BigRational::new(1.into(), BigInt::from(10).pow(40)));
        assert!(decide_zero(&near, &AssumptionSet::new(), &cfg).is_unknown());
    }

    #[test]
    fn assumptions() {
        let mut a = AssumptionSet::new();
        a.parse_item("a!=0").unwrap();
        a.parse_item("b=1/2").unwrap();
        assert!(a.parse_item("b=3").is_err());
        assert!(a.parse_item("a=0").is_err());
        assert!(a.parse_item("c>0").is_ok());
        assert!(a.parse_item("nonsense").is_err());
    }
}
