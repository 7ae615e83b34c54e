//! Arbitrary-precision evaluation.

use crate::error::ExprError;
use crate::expr::{Expr, Func};
use crate::kernel::{self, Kind, ROOT_INDEX};
use crate::mono::Var;
use crate::poly::Poly;
use crate::ratfn::RatFn;
use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::collections::{BTreeMap, HashMap};

const RM: RoundingMode = RoundingMode::ToEven;

/// Working precision in bits for `digits` decimal digits plus guard bits.
pub fn bits_for(digits: usize) -> usize {
    let b = (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 64;
    b.div_ceil(64) * 64
}

/// Evaluation context: precision and cached constants.
pub struct Evaluator {
    pub p: usize,
    cc: Consts,
}

impl Evaluator {
    pub fn new(digits: usize) -> Self {
        Evaluator { p: bits_for(digits), cc: Consts::new().expect("constant cache") }
    }

    pub fn int(&self, n: &BigInt) -> BigFloat {
        if let Some(v) = n.to_i64() {
            return BigFloat::from_i64(v, self.p);
        }
        // base 2^32 digits
        let (sign, digits) = n.to_u32_digits();
        let base = BigFloat::from_u64(1u64 << 32, self.p);
        let mut acc = BigFloat::from_u64(0, self.p);
        for d in digits.iter().rev() {
            acc = acc.mul(&base, self.p, RM).add(&BigFloat::from_u64(*d as u64, self.p), self.p, RM);
        }
        if sign == num_bigint::Sign::Minus {
            acc = acc.neg();
        }
        acc
    }

    pub fn rational(&self, q: &BigRational) -> BigFloat {
        self.int(q.numer()).div(&self.int(q.denom()), self.p, RM)
    }

    pub fn parse(&mut self, s: &str) -> Option<BigFloat> {
        let v = BigFloat::parse(s, Radix::Dec, self.p, RM, &mut self.cc);
        if v.is_nan() {
            None
        } else {
            Some(v)
        }
    }

    pub fn pi(&mut self) -> BigFloat {
        self.cc.pi(self.p, RM)
    }

    pub fn format(&mut self, v: &BigFloat) -> String {
        v.format(Radix::Dec, RM, &mut self.cc).unwrap_or_else(|_| "NaN".into())
    }

    fn check(&self, v: BigFloat, what: &str) -> Result<BigFloat, ExprError> {
        if v.is_nan() || v.is_inf() {
            Err(ExprError::Undefined(what.to_string()))
        } else {
            Ok(v)
        }
    }

    fn div(&self, a: &BigFloat, b: &BigFloat) -> Result<BigFloat, ExprError> {
        if b.is_zero() {
            return Err(ExprError::Undefined("pole".into()));
        }
        self.check(a.div(b, self.p, RM), "division")
    }

    /// Real power `b^(n/d)`; odd `d` allows a negative base.
    pub fn pow_rational(&mut self, b: &BigFloat, e: &BigRational) -> Result<BigFloat, ExprError> {
        if e.is_integer() {
            let n = e.to_integer();
            if b.is_zero() {
                return if n.is_negative() { Err(ExprError::Undefined("pole".into())) } else if n.is_zero() { Ok(BigFloat::from_i64(1, self.p)) } else { Ok(b.clone()) };
            }
            let k = n.abs().to_usize().ok_or_else(|| ExprError::UnsupportedPower(e.to_string()))?;
            let v = b.powi(k, self.p, RM);
            return if n.is_negative() { self.div(&BigFloat::from_i64(1, self.p), &v) } else { self.check(v, "power") };
        }
        if b.is_zero() {
            return if e.is_positive() { Ok(b.clone()) } else { Err(ExprError::Undefined("pole".into())) };
        }
        let negative = b.is_negative();
        if negative && e.denom().is_even() {
            return Err(ExprError::Undefined("even root of a negative number".into()));
        }
        let ab = b.abs();
        let ev = self.rational(e);
        let v = ab.ln(self.p, RM, &mut self.cc).mul(&ev, self.p, RM).exp(self.p, RM, &mut self.cc);
        let v = self.check(v, "power")?;
        Ok(if negative && e.numer().is_odd() { v.neg() } else { v })
    }

    pub fn func(&mut self, f: Func, a: &BigFloat) -> Result<BigFloat, ExprError> {
        let p = self.p;
        let v = match f {
            Func::Exp => a.exp(p, RM, &mut self.cc),
            Func::Ln => {
                if !a.is_positive() || a.is_zero() {
                    return Err(ExprError::Undefined("logarithm of a non-positive number".into()));
                }
                a.ln(p, RM, &mut self.cc)
            }
            Func::Sin => a.sin(p, RM, &mut self.cc),
            Func::Cos => a.cos(p, RM, &mut self.cc),
            Func::Tan => {
                let c = a.cos(p, RM, &mut self.cc);
                let s = a.sin(p, RM, &mut self.cc);
                return self.div(&s, &c);
            }
        };
        self.check(v, f.name())
    }

    /// Evaluates an expression tree directly, without normalising it.
    pub fn eval_expr(&mut self, e: &Expr, point: &BTreeMap<String, BigFloat>) -> Result<BigFloat, ExprError> {
        Ok(match e {
            Expr::Num(q) => self.rational(q),
            Expr::Sym(s) => point.get(s).cloned().ok_or_else(|| ExprError::Unbound(s.clone()))?,
            Expr::Add(ts) => {
                let mut acc = BigFloat::from_i64(0, self.p);
                for t in ts {
                    acc = acc.add(&self.eval_expr(t, point)?, self.p, RM);
                }
                acc
            }
            Expr::Mul(fs) => {
                let mut acc = BigFloat::from_i64(1, self.p);
                for f in fs {
                    acc = acc.mul(&self.eval_expr(f, point)?, self.p, RM);
                }
                acc
            }
            Expr::Pow(b, r) => {
                let bv = self.eval_expr(b, point)?;
                self.pow_rational(&bv, r)?
            }
            Expr::Func(f, a) => {
                let av = self.eval_expr(a, point)?;
                self.func(*f, &av)?
            }
        })
    }

    /// Evaluates a rational function; `point` binds symbol kernels.
    pub fn eval_ratfn(&mut self, r: &RatFn, point: &HashMap<Var, BigFloat>) -> Result<BigFloat, ExprError> {
        let mut cache = HashMap::new();
        let n = self.eval_poly(r.num(), point, &mut cache)?;
        let d = self.eval_poly(r.den(), point, &mut cache)?;
        self.div(&n, &d)
    }

    fn eval_poly(
        &mut self,
        p: &Poly,
        point: &HashMap<Var, BigFloat>,
        cache: &mut HashMap<Var, BigFloat>,
    ) -> Result<BigFloat, ExprError> {
        let mut acc = BigFloat::from_i64(0, self.p);
        for (m, c) in p.terms() {
            let mut t = self.int(c);
            for &(v, e) in m.pairs() {
                let f = self.kernel_power(v, e, point, cache)?;
                t = t.mul(&f, self.p, RM);
            }
            acc = acc.add(&t, self.p, RM);
        }
        Ok(acc)
    }

    fn kernel_power(
        &mut self,
        v: Var,
        e: u32,
        point: &HashMap<Var, BigFloat>,
        cache: &mut HashMap<Var, BigFloat>,
    ) -> Result<BigFloat, ExprError> {
        let entry = kernel::entry(v);
        if let Kind::Root(b) = &entry.kind {
            let bv = match cache.get(&v) {
                Some(x) => x.clone(),
                None => {
                    let x = self.eval_poly(b, point, cache)?;
                    cache.insert(v, x.clone());
                    x
                }
            };
            let r = BigRational::new(BigInt::from(e), BigInt::from(ROOT_INDEX));
            return self.pow_rational(&bv, &r);
        }
        let kv = match cache.get(&v) {
            Some(x) => x.clone(),
            None => {
                let x = match &entry.kind {
                    Kind::Symbol(s) => point.get(&v).cloned().ok_or_else(|| ExprError::Unbound(s.clone()))?,
                    Kind::Exp(u) => {
                        let a = self.eval_ratfn(u, point)?;
                        self.func(Func::Exp, &a)?
                    }
                    Kind::Ln(u) => {
                        let a = self.eval_ratfn(u, point)?;
                        self.func(Func::Ln, &a)?
                    }
                    Kind::Sin(u) => {
                        let a = self.eval_ratfn(u, point)?;
                        self.func(Func::Sin, &a)?
                    }
                    Kind::Cos(u) => {
                        let a = self.eval_ratfn(u, point)?;
                        self.func(Func::Cos, &a)?
                    }
                    Kind::Root(_) => unreachable!(),
                };
                cache.insert(v, x.clone());
                x
            }
        };
        Ok(kv.powi(e as usize, self.p, RM))
    }
}

/// Evaluates `e` at `point`, correctly rounded to `digits` significant digits.
pub fn eval_numeric(e: &Expr, point: &BTreeMap<String, BigFloat>, digits: usize) -> Result<BigFloat, ExprError> {
    let mut ev = Evaluator::new(digits + 10);
    let v = ev.eval_expr(e, point)?;
    Ok(round_to(&v, bits_for(digits)))
}

pub fn round_to(v: &BigFloat, p: usize) -> BigFloat {
    let mut r = v.clone();
    let _ = r.set_precision(p, RM);
    r
}

/// Nearest `f64`, for reporting.
pub fn to_f64(v: &BigFloat) -> f64 {
    if v.is_zero() {
        return 0.0;
    }
    let mut cc = Consts::new().expect("constant cache");
    let s = v.format(Radix::Dec, RM, &mut cc).unwrap_or_default();
    s.parse().unwrap_or(f64::NAN)
}

/// Approximate base-10 logarithm of `|v|`, `-inf` for zero.
pub fn log10_abs(v: &BigFloat) -> f64 {
    if v.is_zero() {
        return f64::NEG_INFINITY;
    }
    let e = v.exponent().unwrap_or(0) as f64;
    // mantissa in [0.5, 1)
    let mut m = v.abs();
    let _ = m.set_exponent(0);
    (to_f64(&m)).log10() + e * std::f64::consts::LOG10_2
}

pub fn is_negative(v: &BigFloat) -> bool {
    v.sign() == Some(Sign::Neg) && !v.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_expr;

    #[test]
    fn simple_values() {
        let e = parse_expr("6*y^2 + x").unwrap();
        let mut pt = BTreeMap::new();
        pt.insert("x".to_string(), BigFloat::from_i64(1, 256));
        pt.insert("y".to_string(), BigFloat::from_i64(1, 256));
        let v = eval_numeric(&e, &pt, 30).unwrap();
        assert_eq!(to_f64(&v), 7.0);
    }

    #[test]
    fn trig_value() {
        let mut ev = Evaluator::new(50);
        let half_pi = ev.pi().div(&BigFloat::from_i64(2, ev.p), ev.p, RM);
        let e = parse_expr("1/(12*x^5*sin(y)^5)").unwrap();
        let mut pt = BTreeMap::new();
        pt.insert("x".to_string(), BigFloat::from_i64(1, ev.p));
        pt.insert("y".to_string(), half_pi);
        let v = eval_numeric(&e, &pt, 50).unwrap();
        assert!((to_f64(&v) - 1.0 / 12.0).abs() < 1e-15);
    }

    #[test]
    fn poles_and_roots() {
        let mut pt = BTreeMap::new();
        pt.insert("x".to_string(), BigFloat::from_i64(0, 128));
        assert!(eval_numeric(&parse_expr("1/x").unwrap(), &pt, 20).is_err());
        pt.insert("x".to_string(), BigFloat::from_i64(-8, 128));
        let v = eval_numeric(&parse_expr("x^(1/3)").unwrap(), &pt, 20).unwrap();
        assert!((to_f64(&v) + 2.0).abs() < 1e-15);
        assert!(eval_numeric(&parse_expr("x^(1/2)").unwrap(), &pt, 20).is_err());
    }

    #[test]
    fn magnitude() {
        let v = BigFloat::from_f64(1.5e-31, 128);
        assert!((log10_abs(&v) - (1.5e-31f64).log10()).abs() < 1e-9);
    }
}
