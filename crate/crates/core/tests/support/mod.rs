//! Shared helpers for the property and acceptance suites.
#![allow(dead_code)]

use cubic_ode_core::{parse_ode, Engine, OdeCubic, PointMap};
use cubic_ode_expr::kernel::{X, Y};
use cubic_ode_expr::numeric::log10_abs;
use cubic_ode_expr::{decide_zero, parse_expr, AssumptionSet, BigFloat, Evaluator, ProbeConfig, RatFn, RoundingMode};
use std::collections::HashMap;

pub const RM: RoundingMode = RoundingMode::ToEven;

pub fn ode(s: &str) -> OdeCubic {
    parse_ode(s, &AssumptionSet::new()).unwrap()
}

pub fn rf(s: &str) -> RatFn {
    parse_expr(s).unwrap().to_ratfn().unwrap()
}

pub fn is_zero(v: &RatFn) -> bool {
    decide_zero(v, &AssumptionSet::new(), &ProbeConfig::default()).is_zero()
}

/// `x~ = a x + b y + e`, `y~ = c x + d y + f`.
pub fn affine(a: i64, b: i64, c: i64, d: i64, e: i64, f: i64) -> PointMap {
    let det = a * d - b * c;
    assert_ne!(det, 0);
    let (x, y) = (RatFn::x(), RatFn::y());
    let xt = &x * a + &y * b + e;
    let yt = &x * c + &y * d + f;
    let (u, v) = (&x - e, &y - f);
    let xi = (&u * d - &v * b) * RatFn::ratio(1, det);
    let yi = (&v * a - &u * c) * RatFn::ratio(1, det);
    PointMap::new(xt, yt).with_inverse(xi, yi)
}

/// `second` after `first`.
pub fn compose(first: &PointMap, second: &PointMap) -> PointMap {
    let xt = first.pull_back(&second.xt).unwrap();
    let yt = first.pull_back(&second.yt).unwrap();
    let (fi, si) = (first.inverse.clone().unwrap(), second.inverse.clone().unwrap());
    let inner = PointMap::new(si.0, si.1);
    PointMap::new(xt, yt).with_inverse(inner.pull_back(&fi.0).unwrap(), inner.pull_back(&fi.1).unwrap())
}

/// The four pseudoinvariants with their weights.
pub fn weighted(e: &mut Engine) -> Vec<(&'static str, i32, RatFn)> {
    vec![
        ("Omega", 1, e.omega_cap().unwrap()),
        ("N", 2, e.n().unwrap()),
        ("M", 4, e.m().unwrap()),
        ("Z", 7, e.z().unwrap()),
    ]
}

/// Ten sample points away from the coordinate axes.
pub fn probe_points(ev: &mut Evaluator) -> Vec<(BigFloat, BigFloat)> {
    (0..10)
        .map(|k| {
            let x = ev.parse(&format!("{}", 0.37 + 0.53 * k as f64)).unwrap();
            let y = ev.parse(&format!("{}", 1.21 + 0.29 * k as f64)).unwrap();
            (x, y)
        })
        .collect()
}

/// Largest `log10 |J - c J~ o T| / |J|` over the probe points, evaluating
/// `J~` at the numerically mapped point. `None` if every point is singular.
pub fn transfer_error(j: &RatFn, jt: &RatFn, map: &PointMap, c: i64, digits: usize) -> Option<f64> {
    let mut ev = Evaluator::new(digits);
    let p = ev.p;
    let cf = BigFloat::from_i64(c, p);
    let mut worst: Option<f64> = None;
    for (x, y) in probe_points(&mut ev) {
        let at = HashMap::from([(X, x), (Y, y)]);
        let Ok(xt) = ev.eval_ratfn(&map.xt, &at) else { continue };
        let Ok(yt) = ev.eval_ratfn(&map.yt, &at) else { continue };
        let (Ok(a), Ok(b)) = (ev.eval_ratfn(j, &at), ev.eval_ratfn(jt, &HashMap::from([(X, xt), (Y, yt)]))) else {
            continue;
        };
        let diff = a.sub(&cf.mul(&b, p, RM), p, RM);
        let rel = if a.is_zero() { log10_abs(&diff) } else { log10_abs(&diff) - log10_abs(&a) };
        worst = Some(worst.map_or(rel, |w: f64| w.max(rel)));
    }
    worst
}
