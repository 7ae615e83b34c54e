//! Equations `y'' = P + 3Q y' + 3R y'^2 + S y'^3` and point transformations.

use crate::error::CoreError;
use cubic_ode_expr::kernel::{self, X, Y};
use cubic_ode_expr::{decide_zero, parse_expr, AssumptionSet, Expr, ProbeConfig, RatFn, ZeroVerdict};
use num_bigint::BigInt;
use num_rational::BigRational;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

/// Internal name of the `y'` symbol.
pub const YP: &str = "yp";

/// The four coefficients, with `Q` and `R` already divided by three.
#[derive(Clone, Debug, PartialEq)]
pub struct OdeCubic {
    pub p: RatFn,
    pub q: RatFn,
    pub r: RatFn,
    pub s: RatFn,
    pub assume: AssumptionSet,
}

impl OdeCubic {
    pub fn new(p: RatFn, q: RatFn, r: RatFn, s: RatFn) -> Self {
        OdeCubic { p, q, r, s, assume: AssumptionSet::new() }
    }

    pub fn with_assumptions(mut self, assume: AssumptionSet) -> Self {
        self.assume = assume;
        self
    }

    pub fn coeffs(&self) -> [&RatFn; 4] {
        [&self.p, &self.q, &self.r, &self.s]
    }

    /// Parameter names: every symbol other than `x` and `y`.
    pub fn params(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for c in self.coeffs() {
            for v in c.symbols() {
                if v != X && v != Y {
                    out.insert(kernel::name(v));
                }
            }
        }
        out
    }

    /// Right-hand side as an expression in `x`, `y` and the symbol `yp`.
    pub fn rhs(&self) -> Expr {
        let yp = Expr::sym(YP);
        let mut terms = Vec::new();
        if !self.p.is_zero() {
            terms.push(self.p.to_expr());
        }
        for (k, c) in [(1, &self.q), (2, &self.r)] {
            if !c.is_zero() {
                let c3 = c.mul(&RatFn::from_int(3)).to_expr();
                terms.push(Expr::mul(vec![c3, Expr::pow(yp.clone(), BigRational::from_integer(BigInt::from(k)))]));
            }
        }
        if !self.s.is_zero() {
            terms.push(Expr::mul(vec![self.s.to_expr(), Expr::pow(yp, BigRational::from_integer(BigInt::from(3)))]));
        }
        Expr::add(terms)
    }
}

impl fmt::Display for OdeCubic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y'' = {}", replace_ident(&self.rhs().to_string(), YP, "y′"))
    }
}

/// Replaces whole identifiers only.
fn replace_ident(text: &str, from: &str, to: &str) -> String {
    let b = text.as_bytes();
    let is_id = |c: u8| c.is_ascii_alphanumeric() || c == b'_';
    let mut out = String::with_capacity(text.len());
    let mut i = 0;
    while i < b.len() {
        if text[i..].starts_with(from)
            && (i == 0 || !is_id(b[i - 1]))
            && b.get(i + from.len()).map_or(true, |&c| !is_id(c))
        {
            out.push_str(to);
            i += from.len();
        } else {
            let ch = text[i..].chars().next().unwrap();
            out.push(ch);
            i += ch.len_utf8();
        }
    }
    out
}

/// Rewrites `y'` and `y′` (not preceded by an identifier character) to `yp`.
fn normalize_primes(rhs: &str) -> String {
    let mut out = String::with_capacity(rhs.len());
    let chars: Vec<char> = rhs.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let prev_id = i > 0 && (chars[i - 1].is_ascii_alphanumeric() || chars[i - 1] == '_');
        if chars[i] == 'y' && !prev_id && matches!(chars.get(i + 1), Some('\'') | Some('′')) {
            out.push_str(YP);
            i += 2;
        } else {
            out.push(chars[i]);
            i += 1;
        }
    }
    out
}

/// Parses `y'' = RHS` with RHS polynomial of degree at most 3 in `y'`.
pub fn parse_ode(text: &str, assume: &AssumptionSet) -> Result<OdeCubic, CoreError> {
    let (lhs, rhs) = text
        .split_once('=')
        .ok_or_else(|| CoreError::Equation("expected `y'' = RHS`".into()))?;
    let lhs: String = lhs.chars().filter(|c| !c.is_whitespace()).collect();
    if lhs != "y''" && lhs != "y′′" && lhs != "y″" {
        return Err(CoreError::Equation(format!("left-hand side must be y'', found `{}`", lhs)));
    }
    let rhs = normalize_primes(rhs);
    if rhs.contains('\'') || rhs.contains('′') {
        return Err(CoreError::Equation("only first derivatives may appear on the right".into()));
    }
    let e = parse_expr(&rhs)?;
    let yp = kernel::symbol(YP);
    let r = e.to_ratfn()?;
    let coeffs = r.coefficients_in(yp).ok_or(CoreError::NotPolynomialInYp)?;
    if let Some((&d, _)) = coeffs.iter().next_back() {
        if d > 3 {
            return Err(CoreError::DegreeTooHigh(d));
        }
    }
    let get = |k: u32| coeffs.get(&k).cloned().unwrap_or_else(RatFn::zero);
    let third = BigRational::new(BigInt::from(1), BigInt::from(3));
    Ok(OdeCubic {
        p: get(0),
        q: get(1).scale(&third),
        r: get(2).scale(&third),
        s: get(3),
        assume: assume.clone(),
    })
}

/// A point map `x~ = xt(x, y)`, `y~ = yt(x, y)`, optionally with its inverse
/// `x = X(x~, y~)`, `y = Y(x~, y~)` written in the letters `x`, `y`.
#[derive(Clone, Debug, PartialEq)]
pub struct PointMap {
    pub xt: RatFn,
    pub yt: RatFn,
    pub inverse: Option<(RatFn, RatFn)>,
}

impl PointMap {
    pub fn new(xt: RatFn, yt: RatFn) -> Self {
        PointMap { xt, yt, inverse: None }
    }

    pub fn with_inverse(mut self, x: RatFn, y: RatFn) -> Self {
        self.inverse = Some((x, y));
        self
    }

    pub fn parse(xt: &str, yt: &str) -> Result<Self, CoreError> {
        Ok(PointMap::new(parse_expr(xt)?.to_ratfn()?, parse_expr(yt)?.to_ratfn()?))
    }

    pub fn identity() -> Self {
        PointMap::new(RatFn::x(), RatFn::y()).with_inverse(RatFn::x(), RatFn::y())
    }

    /// `x~_x y~_y - x~_y y~_x`.
    pub fn jacobian(&self) -> RatFn {
        &self.xt.diff(X) * &self.yt.diff(Y) - &self.xt.diff(Y) * &self.yt.diff(X)
    }

    /// Applies the map to a function of the new variables.
    pub fn pull_back(&self, f: &RatFn) -> Result<RatFn, CoreError> {
        let mut m = HashMap::new();
        m.insert(X, self.xt.clone());
        m.insert(Y, self.yt.clone());
        Ok(f.subs(&m)?)
    }

    /// Rewrites a function of the old variables in the new ones.
    pub fn push_forward(&self, f: &RatFn) -> Result<Option<RatFn>, CoreError> {
        match &self.inverse {
            None => Ok(None),
            Some((xi, yi)) => {
                let mut m = HashMap::new();
                m.insert(X, xi.clone());
                m.insert(Y, yi.clone());
                Ok(Some(f.subs(&m)?))
            }
        }
    }
}

/// Homogeneous binary form: coefficient `k` multiplies `u^(n-k) v^k`.
type Form = Vec<RatFn>;

fn form_mul(a: &[RatFn], b: &[RatFn]) -> Form {
    let mut out = vec![RatFn::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

fn form_pow(l: &[RatFn], n: usize) -> Form {
    let mut acc = vec![RatFn::one()];
    for _ in 0..n {
        acc = form_mul(&acc, l);
    }
    acc
}

/// Coefficients of the transformed equation as functions of the old variables.
///
/// With `D = x~_x + x~_y p` and `N = y~_x + y~_y p`, the transformed right-hand
/// side times `D^3` is a cubic form in `(1, p)`; rewriting `(1, p)` through the
/// inverse Jacobian expresses it in `(D, N)`, whose coefficients are the new
/// `P, 3Q, 3R, S`.
pub fn transformed_coefficients(ode: &OdeCubic, map: &PointMap) -> Result<[RatFn; 4], CoreError> {
    let (a, b) = (map.xt.diff(X), map.xt.diff(Y));
    let (c, d) = (map.yt.diff(X), map.yt.diff(Y));
    let j = &a * &d - &b * &c;
    if j.is_zero() {
        return Err(CoreError::DegenerateMap);
    }
    let second = |f: &RatFn| -> Form {
        let fx = f.diff(X);
        let fy = f.diff(Y);
        vec![fx.diff(X), &fx.diff(Y) * 2, fy.diff(Y)]
    };
    let cy = form_mul(&second(&map.yt), &[a.clone(), b.clone()]);
    let cx = form_mul(&second(&map.xt), &[c.clone(), d.clone()]);
    let base = [&ode.p * &j, &ode.q * &j * 3, &ode.r * &j * 3, &ode.s * &j];
    let lhs: Vec<RatFn> = (0..4).map(|k| &base[k] + &cy[k] - &cx[k]).collect();
    let u = [&d / &j, -(&b / &j)];
    let v = [-(&c / &j), &a / &j];
    let mut out = vec![RatFn::zero(); 4];
    for (k, ck) in lhs.iter().enumerate() {
        if ck.is_zero() {
            continue;
        }
        let term = form_mul(&form_pow(&u, 3 - k), &form_pow(&v, k));
        for i in 0..4 {
            out[i] = &out[i] + &(ck * &term[i]);
        }
    }
    let third = RatFn::ratio(1, 3);
    Ok([out[0].clone(), &out[1] * &third, &out[2] * &third, out[3].clone()])
}

/// Result of [`point_transform`].
#[derive(Clone, Debug)]
pub struct Transformed {
    pub ode: OdeCubic,
    /// False when no inverse was supplied and the coefficients are still
    /// written in the old variables.
    pub in_new_variables: bool,
}

pub fn point_transform(ode: &OdeCubic, map: &PointMap, cfg: &ProbeConfig) -> Result<Transformed, CoreError> {
    match decide_zero(&map.jacobian(), &ode.assume, cfg) {
        ZeroVerdict::Zero => return Err(CoreError::DegenerateMap),
        ZeroVerdict::Unknown(d) => return Err(CoreError::UndecidedMap(d)),
        ZeroVerdict::NonZero { .. } => {}
    }
    let c = transformed_coefficients(ode, map)?;
    let (c, in_new) = if map.inverse.is_some() {
        let mut out = Vec::with_capacity(4);
        for k in c.iter() {
            out.push(map.push_forward(k)?.unwrap());
        }
        (out, true)
    } else {
        (c.to_vec(), false)
    };
    let mut it = c.into_iter();
    let t = OdeCubic {
        p: it.next().unwrap(),
        q: it.next().unwrap(),
        r: it.next().unwrap(),
        s: it.next().unwrap(),
        assume: ode.assume.clone(),
    };
    Ok(Transformed { ode: t, in_new_variables: in_new })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ode(s: &str) -> OdeCubic {
        parse_ode(s, &AssumptionSet::new()).unwrap()
    }

    fn rf(s: &str) -> RatFn {
        parse_expr(s).unwrap().to_ratfn().unwrap()
    }

    #[test]
    fn coefficient_extraction() {
        let o = ode("y'' = 6*y^2 + x");
        assert_eq!(o.p, rf("6*y^2 + x"));
        assert!(o.q.is_zero() && o.r.is_zero() && o.s.is_zero());
        let o = ode("y'' = (-2*x^3 - x*y + a)*yp^3");
        assert_eq!(o.s, rf("-2*x^3 - x*y + a"));
        assert!(o.p.is_zero());
        let o = ode("y'' = y'^2/(2*y) - (1/x)*y'");
        assert_eq!(o.r, rf("1/(6*y)"));
        assert_eq!(o.q, rf("-1/(3*x)"));
    }

    #[test]
    fn rejects_out_of_class() {
        let none = AssumptionSet::new();
        assert_eq!(parse_ode("y'' = yp^4", &none), Err(CoreError::DegreeTooHigh(4)));
        assert_eq!(parse_ode("y'' = 1/yp", &none), Err(CoreError::NotPolynomialInYp));
        assert_eq!(parse_ode("y'' = sin(yp)", &none), Err(CoreError::NotPolynomialInYp));
        assert!(matches!(parse_ode("y' = y", &none), Err(CoreError::Equation(_))));
    }

    #[test]
    fn print_parse_round_trip() {
        let o = ode("y'' = (x - y)*yp^3 + 3*exp(y)*yp - 1/x");
        let again = ode(&o.to_string());
        assert_eq!(o, again);
    }

    #[test]
    fn identity_and_swap() {
        let o = ode("y'' = x*y + y^2*yp + yp^3/x");
        let t = point_transform(&o, &PointMap::identity(), &ProbeConfig::default()).unwrap();
        assert_eq!(t.ode, o);
        let zero = ode("y'' = 0");
        let swap = PointMap::new(RatFn::y(), RatFn::x()).with_inverse(RatFn::y(), RatFn::x());
        let t = point_transform(&zero, &swap, &ProbeConfig::default()).unwrap();
        assert!(t.ode.coeffs().iter().all(|c| c.is_zero()));
    }

    #[test]
    fn inversion_of_dependent_variable() {
        // PIII(0,b,0,0) under y -> 1/y becomes PIII(-b,0,0,0)
        let o = ode("y'' = yp^2/y - yp/x + b/x");
        let m = PointMap::new(RatFn::x(), rf("1/y")).with_inverse(RatFn::x(), rf("1/y"));
        let t = point_transform(&o, &m, &ProbeConfig::default()).unwrap();
        assert_eq!(t.ode, ode("y'' = yp^2/y - yp/x - b*y^2/x"));
    }

    #[test]
    fn degenerate_map() {
        let m = PointMap::new(rf("x + y"), rf("2*x + 2*y"));
        let o = ode("y'' = x");
        assert_eq!(point_transform(&o, &m, &ProbeConfig::default()).unwrap_err(), CoreError::DegenerateMap);
    }
}
