use crate::error::ExprError;
use crate::kernel::{self, Kind, ROOT_INDEX};
use crate::mono::{Mono, Var};
use crate::poly::Poly;
use crate::ratfn::{self, ranked_terms, ranked_vars, RatFn};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Func {
    Exp,
    Ln,
    Sin,
    Cos,
    Tan,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
        }
    }

    pub fn from_name(s: &str) -> Option<Func> {
        Some(match s {
            "exp" => Func::Exp,
            "ln" => Func::Ln,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "tan" => Func::Tan,
            _ => return None,
        })
    }
}

/// Expression tree. Constants are exact rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Num(BigRational),
    Sym(String),
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    Pow(Box<Expr>, BigRational),
    Func(Func, Box<Expr>),
}

impl Expr {
    pub fn int(n: i64) -> Expr {
        Expr::Num(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn rational(n: i64, d: i64) -> Expr {
        Expr::Num(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn sym(s: &str) -> Expr {
        Expr::Sym(s.to_string())
    }

    pub fn zero() -> Expr {
        Expr::int(0)
    }

    /// Sum with nested sums flattened.
    pub fn add(terms: Vec<Expr>) -> Expr {
        let mut out = Vec::new();
        for t in terms {
            match t {
                Expr::Add(ts) => out.extend(ts),
                t => out.push(t),
            }
        }
        match out.len() {
            0 => Expr::zero(),
            1 => out.pop().unwrap(),
            _ => Expr::Add(out),
        }
    }

    /// Product with nested products flattened.
    pub fn mul(factors: Vec<Expr>) -> Expr {
        let mut out = Vec::new();
        for f in factors {
            match f {
                Expr::Mul(fs) => out.extend(fs),
                f => out.push(f),
            }
        }
        match out.len() {
            0 => Expr::int(1),
            1 => out.pop().unwrap(),
            _ => Expr::Mul(out),
        }
    }

    pub fn pow(base: Expr, e: BigRational) -> Expr {
        if e.is_one() {
            base
        } else {
            Expr::Pow(Box::new(base), e)
        }
    }

    pub fn func(f: Func, arg: Expr) -> Expr {
        Expr::Func(f, Box::new(arg))
    }

    pub fn neg(self) -> Expr {
        Expr::mul(vec![Expr::int(-1), self])
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Expr::Num(q) if q.is_zero())
    }

    pub fn free_symbols(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut BTreeSet<String>) {
        match self {
            Expr::Num(_) => {}
            Expr::Sym(s) => {
                out.insert(s.clone());
            }
            Expr::Add(ts) | Expr::Mul(ts) => ts.iter().for_each(|t| t.collect_symbols(out)),
            Expr::Pow(b, _) => b.collect_symbols(out),
            Expr::Func(_, a) => a.collect_symbols(out),
        }
    }

    /// Converts to the canonical rational-function representation.
    pub fn to_ratfn(&self) -> Result<RatFn, ExprError> {
        Ok(match self {
            Expr::Num(q) => RatFn::from_rational(q),
            Expr::Sym(s) => RatFn::symbol(s),
            Expr::Add(ts) => {
                let mut acc = RatFn::zero();
                for t in ts {
                    acc = acc.add(&t.to_ratfn()?);
                }
                acc
            }
            Expr::Mul(fs) => {
                let mut acc = RatFn::one();
                for f in fs {
                    acc = acc.mul(&f.to_ratfn()?);
                    if acc.is_zero() {
                        // remaining factors must still be well defined
                        for g in fs {
                            g.to_ratfn()?;
                        }
                        return Ok(acc);
                    }
                }
                acc
            }
            Expr::Pow(b, e) => b.to_ratfn()?.pow_rat(e)?,
            Expr::Func(f, a) => {
                let u = a.to_ratfn()?;
                match f {
                    Func::Exp => ratfn::exp(&u),
                    Func::Ln => ratfn::ln(&u)?,
                    Func::Sin => ratfn::sin(&u),
                    Func::Cos => ratfn::cos(&u),
                    Func::Tan => ratfn::tan(&u),
                }
            }
        })
    }
}

impl RatFn {
    /// Expression tree of the canonical form, terms in name-ranked order.
    pub fn to_expr(&self) -> Expr {
        if self.is_zero() {
            return Expr::zero();
        }
        if let Some(d) = self.den().as_constant() {
            let terms = ranked_terms(self.num())
                .into_iter()
                .map(|(m, c)| term_expr(BigRational::new(c, d.clone()), &m))
                .collect();
            return Expr::add(terms);
        }
        let num = poly_expr(self.num());
        let den = poly_expr(self.den());
        Expr::mul(vec![num, Expr::pow(den, BigRational::from_integer(BigInt::from(-1)))])
    }
}

pub(crate) fn poly_expr(p: &Poly) -> Expr {
    let terms = ranked_terms(p).into_iter().map(|(m, c)| term_expr(BigRational::from_integer(c), &m)).collect();
    Expr::add(terms)
}

fn term_expr(c: BigRational, m: &Mono) -> Expr {
    let mut factors = Vec::new();
    if !c.is_one() || m.is_one() {
        factors.push(Expr::Num(c));
    }
    for (v, e) in ranked_vars(m) {
        factors.push(kernel_power(v, e));
    }
    Expr::mul(factors)
}

fn kernel_power(v: Var, e: u32) -> Expr {
    let entry = kernel::entry(v);
    let ei = BigRational::from_integer(BigInt::from(e));
    match &entry.kind {
        Kind::Symbol(s) => Expr::pow(Expr::Sym(s.clone()), ei),
        Kind::Exp(u) => Expr::pow(Expr::func(Func::Exp, u.to_expr()), ei),
        Kind::Ln(u) => Expr::pow(Expr::func(Func::Ln, u.to_expr()), ei),
        Kind::Sin(u) => Expr::pow(Expr::func(Func::Sin, u.to_expr()), ei),
        Kind::Cos(u) => Expr::pow(Expr::func(Func::Cos, u.to_expr()), ei),
        Kind::Root(b) => {
            let r = BigRational::new(BigInt::from(e), BigInt::from(ROOT_INDEX));
            let base = poly_expr(b);
            Expr::pow(base, r)
        }
    }
}

/// Canonical form of an expression.
pub fn normalize(e: &Expr) -> Result<Expr, ExprError> {
    Ok(e.to_ratfn()?.to_expr())
}

/// `order`-th partial derivative with respect to `var`; other symbols are constants.
pub fn differentiate(e: &Expr, var: &str, order: u32) -> Result<Expr, ExprError> {
    let s = kernel::symbol(var);
    Ok(e.to_ratfn()?.diff_n(s, order).to_expr())
}

/// Checks whether a leading coefficient makes a printed term negative.
pub(crate) fn is_negative_term(e: &Expr) -> bool {
    match e {
        Expr::Num(q) => q.is_negative(),
        Expr::Mul(fs) => matches!(fs.first(), Some(Expr::Num(q)) if q.is_negative()),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_expr;

    fn n(s: &str) -> Expr {
        normalize(&parse_expr(s).unwrap()).unwrap()
    }

    #[test]
    fn normal_forms() {
        assert_eq!(n("(x^2 - y^2)/(x - y)"), n("x + y"));
        assert!(n("exp(y)*x - x*exp(y)").is_zero());
        assert_eq!(n("sin(y)^2 + cos(y)^2"), Expr::int(1));
        assert_eq!(n("0"), Expr::int(0));
    }

    #[test]
    fn derivatives() {
        let e = parse_expr("6*y^2 + x").unwrap();
        assert_eq!(differentiate(&e, "y", 2).unwrap(), Expr::int(12));
        let e = parse_expr("y^3 + f*y + g").unwrap();
        assert_eq!(differentiate(&e, "y", 2).unwrap(), n("6*y"));
        assert_eq!(differentiate(&parse_expr("a").unwrap(), "x", 1).unwrap(), Expr::int(0));
    }
}
