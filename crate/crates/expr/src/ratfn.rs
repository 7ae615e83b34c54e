//! Canonical rational functions over the kernel table.
//!
//! A `RatFn` is `num/den` with integer polynomials in kernels, kept in a
//! canonical form:
//!
//! * `gcd(num, den) = 1` and the integer contents are coprime;
//! * the leading coefficient of `den` is positive, leading taken in the
//!   name-ranked monomial order;
//! * `cos(u)^2` is rewritten as `1 - sin(u)^2`, so every cosine has degree at
//!   most one and a zero function always has a literally zero numerator;
//! * `root(b)^k` has `k < ROOT_INDEX` and root kernels never appear as a
//!   monomial factor of the denominator.

use crate::error::ExprError;
use crate::gcd::gcd;
use crate::kernel::{self, Kind, ROOT_INDEX};
use crate::mono::{Mono, Var};
use crate::poly::Poly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use smallvec::SmallVec;
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

enum Hint {
    Full,
    With(Poly),
    Coprime,
}

impl RatFn {
    pub fn zero() -> Self {
        RatFn { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatFn { num: Poly::one(), den: Poly::one() }
    }

    pub fn from_int(n: i64) -> Self {
        RatFn { num: Poly::from_i64(n), den: Poly::one() }
    }

    pub fn from_bigint(n: BigInt) -> Self {
        RatFn { num: Poly::constant(n), den: Poly::one() }
    }

    pub fn from_rational(q: &BigRational) -> Self {
        RatFn { num: Poly::constant(q.numer().clone()), den: Poly::constant(q.denom().clone()) }
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        RatFn::from_rational(&BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_poly(p: Poly) -> Self {
        canon(p, Poly::one(), Hint::Coprime)
    }

    pub fn var(v: Var) -> Self {
        RatFn { num: Poly::var(v), den: Poly::one() }
    }

    pub fn symbol(name: &str) -> Self {
        RatFn::var(kernel::symbol(name))
    }

    pub fn x() -> Self {
        RatFn::var(kernel::X)
    }

    pub fn y() -> Self {
        RatFn::var(kernel::Y)
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match (self.num.as_constant(), self.den.as_constant()) {
            (Some(n), Some(d)) => Some(BigRational::new(n, d)),
            (None, _) if self.num.is_zero() => Some(BigRational::zero()),
            _ => None,
        }
    }

    /// All kernels occurring in numerator or denominator.
    pub fn kernels(&self) -> BTreeSet<Var> {
        let mut s = self.num.vars();
        s.extend(self.den.vars());
        s
    }

    /// Symbol kernels the value depends on.
    pub fn symbols(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        for k in self.kernels() {
            out.extend(kernel::entry(k).syms.iter().copied());
        }
        out
    }

    pub fn depends_on(&self, s: Var) -> bool {
        self.kernels().into_iter().any(|k| kernel::depends_on(k, s))
    }

    /// Size measure: total number of terms.
    pub fn size(&self) -> usize {
        self.num.len() + self.den.len()
    }

    pub fn neg(&self) -> RatFn {
        RatFn { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn add(&self, o: &RatFn) -> RatFn {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let num = self.num.add(&o.num);
            if num.is_zero() {
                return RatFn::zero();
            }
            let hint = if self.den.is_constant() { Hint::Coprime } else { Hint::With(self.den.clone()) };
            return canon(num, self.den.clone(), hint);
        }
        if self.den.is_constant() && o.den.is_constant() {
            let num = self.num.scale(&o.den.lc()).add(&o.num.scale(&self.den.lc()));
            return canon(num, Poly::constant(self.den.lc() * o.den.lc()), Hint::Coprime);
        }
        let g = gcd(&self.den, &o.den);
        let b1 = self.den.exact_div(&g).unwrap();
        let d1 = o.den.exact_div(&g).unwrap();
        let num = self.num.mul(&d1).add(&o.num.mul(&b1));
        if num.is_zero() {
            return RatFn::zero();
        }
        let den = b1.mul(&o.den);
        let hint = if g.is_constant() { Hint::Coprime } else { Hint::With(g) };
        canon(num, den, hint)
    }

    pub fn sub(&self, o: &RatFn) -> RatFn {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFn) -> RatFn {
        if self.is_zero() || o.is_zero() {
            return RatFn::zero();
        }
        if self.is_one() {
            return o.clone();
        }
        if o.is_one() {
            return self.clone();
        }
        if let Some(q) = o.as_rational() {
            return self.scale(&q);
        }
        if let Some(q) = self.as_rational() {
            return o.scale(&q);
        }
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let a = self.num.exact_div(&g1).unwrap();
        let d = o.den.exact_div(&g1).unwrap();
        let c = o.num.exact_div(&g2).unwrap();
        let b = self.den.exact_div(&g2).unwrap();
        canon(a.mul(&c), b.mul(&d), Hint::Coprime)
    }

    pub fn scale(&self, q: &BigRational) -> RatFn {
        if q.is_zero() {
            return RatFn::zero();
        }
        canon(self.num.scale(q.numer()), self.den.scale(q.denom()), Hint::Coprime)
    }

    pub fn inv(&self) -> Option<RatFn> {
        if self.is_zero() {
            return None;
        }
        Some(canon(self.den.clone(), self.num.clone(), Hint::Coprime))
    }

    /// Panics on division by zero; see [`RatFn::checked_div`].
    pub fn div(&self, o: &RatFn) -> RatFn {
        self.checked_div(o).expect("division by zero rational function")
    }

    pub fn checked_div(&self, o: &RatFn) -> Option<RatFn> {
        Some(self.mul(&o.inv()?))
    }

    pub fn powi(&self, n: i64) -> RatFn {
        if n == 0 {
            return RatFn::one();
        }
        if n < 0 {
            return self.inv().expect("negative power of zero").powi(-n);
        }
        if self.num.is_monomial() && self.den.is_monomial() && no_special(self) {
            let n32 = n as u32;
            let (nm, nc) = self.num.lead().unwrap();
            let (dm, dc) = self.den.lead().unwrap();
            return canon(
                Poly::term(nm.pow(n32), nc.pow(n32)),
                Poly::term(dm.pow(n32), dc.pow(n32)),
                Hint::Coprime,
            );
        }
        let mut base = self.clone();
        let mut acc = RatFn::one();
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Real power with rational exponent. Denominators must divide `ROOT_INDEX`.
    pub fn pow_rat(&self, r: &BigRational) -> Result<RatFn, ExprError> {
        if r.is_integer() {
            let n = r.to_integer().to_i64().ok_or_else(|| ExprError::UnsupportedPower(r.to_string()))?;
            if n < 0 && self.is_zero() {
                return Err(ExprError::DivisionByZero);
            }
            return Ok(self.powi(n));
        }
        if self.is_zero() {
            return if r.is_positive() { Ok(RatFn::zero()) } else { Err(ExprError::DivisionByZero) };
        }
        check_root_index(r)?;
        let n = poly_pow_rat(&self.num, r)?;
        let d = poly_pow_rat(&self.den, r)?;
        Ok(n.div(&d))
    }

    pub fn sqrt(&self) -> Result<RatFn, ExprError> {
        self.pow_rat(&BigRational::new(BigInt::one(), BigInt::from(2)))
    }

    /// Partial derivative with respect to the symbol kernel `s`.
    pub fn diff(&self, s: Var) -> RatFn {
        if !self.depends_on(s) {
            return RatFn::zero();
        }
        let dn = poly_diff(&self.num, s);
        if self.den.is_constant() {
            return dn.scale(&BigRational::new(BigInt::one(), self.den.lc()));
        }
        let dd = poly_diff(&self.den, s);
        let n = dn.mul_poly(&self.den).sub(&dd.mul_poly(&self.num));
        n.div(&RatFn { num: self.den.pow(2), den: Poly::one() })
    }

    pub fn diff_n(&self, s: Var, order: u32) -> RatFn {
        let mut r = self.clone();
        for _ in 0..order {
            r = r.diff(s);
        }
        r
    }

    fn mul_poly(&self, p: &Poly) -> RatFn {
        self.mul(&RatFn { num: p.clone(), den: Poly::one() })
    }

    /// Substitutes symbol kernels by rational functions.
    pub fn subs(&self, map: &HashMap<Var, RatFn>) -> Result<RatFn, ExprError> {
        let keys: BTreeSet<Var> = map.keys().copied().collect();
        let mut values: HashMap<Var, RatFn> = HashMap::new();
        for k in self.kernels() {
            let e = kernel::entry(k);
            if e.syms.is_disjoint(&keys) {
                continue;
            }
            let v = match &e.kind {
                Kind::Symbol(_) => map[&k].clone(),
                Kind::Exp(u) => exp(&u.subs(map)?),
                Kind::Ln(u) => ln(&u.subs(map)?)?,
                Kind::Sin(u) => sin(&u.subs(map)?),
                Kind::Cos(u) => cos(&u.subs(map)?),
                Kind::Root(b) => RatFn::from_poly(b.clone())
                    .subs(map)?
                    .pow_rat(&BigRational::new(BigInt::one(), BigInt::from(ROOT_INDEX)))?,
            };
            values.insert(k, v);
        }
        if values.is_empty() {
            return Ok(self.clone());
        }
        let n = eval_poly(&self.num, &values);
        let d = eval_poly(&self.den, &values);
        n.checked_div(&d).ok_or(ExprError::DivisionByZero)
    }

    pub fn subs_symbol(&self, s: Var, v: &RatFn) -> Result<RatFn, ExprError> {
        let mut m = HashMap::new();
        m.insert(s, v.clone());
        self.subs(&m)
    }

    /// Coefficients of the powers of the symbol `s`, which must occur
    /// polynomially in the numerator only.
    pub fn coefficients_in(&self, s: Var) -> Option<BTreeMap<u32, RatFn>> {
        for k in self.kernels() {
            if k != s && kernel::depends_on(k, s) {
                return None;
            }
        }
        if self.den.contains_var(s) {
            return None;
        }
        let den = RatFn { num: self.den.clone(), den: Poly::one() };
        let mut out = BTreeMap::new();
        for (m, c) in self.num.coefficients_in(|v| v == s) {
            let e = m.degree(s);
            out.insert(e, canon(c, Poly::one(), Hint::Coprime).div(&den));
        }
        Some(out)
    }
}


macro_rules! binop {
    ($tr:ident, $f:ident, $m:ident) => {
        impl std::ops::$tr<&RatFn> for &RatFn {
            type Output = RatFn;
            fn $f(self, o: &RatFn) -> RatFn {
                RatFn::$m(self, o)
            }
        }
        impl std::ops::$tr<RatFn> for RatFn {
            type Output = RatFn;
            fn $f(self, o: RatFn) -> RatFn {
                RatFn::$m(&self, &o)
            }
        }
        impl std::ops::$tr<&RatFn> for RatFn {
            type Output = RatFn;
            fn $f(self, o: &RatFn) -> RatFn {
                RatFn::$m(&self, o)
            }
        }
        impl std::ops::$tr<RatFn> for &RatFn {
            type Output = RatFn;
            fn $f(self, o: RatFn) -> RatFn {
                RatFn::$m(self, &o)
            }
        }
        impl std::ops::$tr<i64> for &RatFn {
            type Output = RatFn;
            fn $f(self, o: i64) -> RatFn {
                RatFn::$m(self, &RatFn::from_int(o))
            }
        }
        impl std::ops::$tr<i64> for RatFn {
            type Output = RatFn;
            fn $f(self, o: i64) -> RatFn {
                RatFn::$m(&self, &RatFn::from_int(o))
            }
        }
        impl std::ops::$tr<&RatFn> for i64 {
            type Output = RatFn;
            fn $f(self, o: &RatFn) -> RatFn {
                RatFn::$m(&RatFn::from_int(self), o)
            }
        }
        impl std::ops::$tr<RatFn> for i64 {
            type Output = RatFn;
            fn $f(self, o: RatFn) -> RatFn {
                RatFn::$m(&RatFn::from_int(self), &o)
            }
        }
    };
}

// Division panics on a zero divisor, like `RatFn::div`.
binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);
binop!(Div, div, div);

impl std::ops::Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn::neg(self)
    }
}

impl std::ops::Neg for RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn::neg(&self)
    }
}

fn no_special(r: &RatFn) -> bool {
    r.kernels().into_iter().all(|k| !matches!(kernel::entry(k).kind, Kind::Cos(_) | Kind::Root(_)))
}

fn check_root_index(r: &BigRational) -> Result<(), ExprError> {
    let q = r.denom().to_u32().unwrap_or(0);
    if q == 0 || ROOT_INDEX % q != 0 {
        return Err(ExprError::UnsupportedPower(r.to_string()));
    }
    Ok(())
}

fn poly_diff(p: &Poly, s: Var) -> RatFn {
    let mut acc = RatFn::zero();
    for v in p.vars() {
        if v == s {
            acc = acc.add(&RatFn::from_poly(p.formal_diff(v)));
            continue;
        }
        let dk = kernel::derivative(v, s);
        if dk.is_zero() {
            continue;
        }
        acc = acc.add(&RatFn::from_poly(p.formal_diff(v)).mul(&dk));
    }
    acc
}

/// Evaluates `p` with some kernels replaced by rational functions, over a
/// common denominator.
fn eval_poly(p: &Poly, values: &HashMap<Var, RatFn>) -> RatFn {
    let vars: Vec<Var> = p.vars().into_iter().filter(|v| values.contains_key(v)).collect();
    if vars.is_empty() {
        return RatFn::from_poly(p.clone());
    }
    let maxdeg: HashMap<Var, u32> = vars.iter().map(|&v| (v, p.degree(v))).collect();
    let mut pow_cache: HashMap<(Var, bool, u32), Poly> = HashMap::new();
    let mut power = |v: Var, of_den: bool, e: u32| -> Poly {
        pow_cache
            .entry((v, of_den, e))
            .or_insert_with(|| {
                let r = &values[&v];
                if of_den { r.den.pow(e) } else { r.num.pow(e) }
            })
            .clone()
    };
    let mut den = Poly::one();
    for &v in &vars {
        den = den.mul(&power(v, true, maxdeg[&v]));
    }
    let mut grouped: BTreeMap<Mono, Vec<(Mono, BigInt)>> = BTreeMap::new();
    for (m, c) in p.terms() {
        let outer = m.restrict(|v| values.contains_key(&v));
        let inner = m.restrict(|v| !values.contains_key(&v));
        grouped.entry(outer).or_default().push((inner, c.clone()));
    }
    let mut num = Poly::zero();
    for (outer, inner) in grouped {
        let mut t = Poly::from_terms(inner);
        for &v in &vars {
            let e = outer.degree(v);
            if e > 0 {
                t = t.mul(&power(v, false, e));
            }
            let de = maxdeg[&v] - e;
            if de > 0 {
                t = t.mul(&power(v, true, de));
            }
        }
        num = num.add(&t);
    }
    canon(num, den, Hint::Full)
}

// ---------------------------------------------------------------------------
// canonical form

fn canon(mut num: Poly, mut den: Poly, hint: Hint) -> RatFn {
    assert!(!den.is_zero(), "zero denominator");
    if num.is_zero() {
        return RatFn::zero();
    }
    let mut changed = rationalize(&mut num, &mut den);
    changed |= reduce(&mut num);
    changed |= reduce(&mut den);
    if num.is_zero() {
        return RatFn::zero();
    }
    if !den.is_constant() {
        let g = match (changed, hint) {
            (true, _) | (_, Hint::Full) => gcd(&num, &den),
            (false, Hint::With(h)) => gcd(&num, &h),
            (false, Hint::Coprime) => Poly::one(),
        };
        if !g.is_constant() {
            num = num.exact_div(&g).expect("gcd divides numerator");
            den = den.exact_div(&g).expect("gcd divides denominator");
        }
    }
    let c = num.content().gcd(&den.content());
    if !c.is_one() {
        num = num.div_int(&c);
        den = den.div_int(&c);
    }
    if ranked_lead_negative(&den) {
        num = num.neg();
        den = den.neg();
    }
    RatFn { num, den }
}

/// Moves root kernels out of the monomial content of the denominator.
fn rationalize(num: &mut Poly, den: &mut Poly) -> bool {
    let mc = den.mono_content();
    let mut fix = Vec::new();
    for &(v, e) in mc.pairs() {
        if matches!(kernel::entry(v).kind, Kind::Root(_)) {
            fix.push((v, ROOT_INDEX - e % ROOT_INDEX));
        }
    }
    if fix.is_empty() {
        return false;
    }
    let m = Mono::from_pairs(fix);
    *num = num.mul_term(&m, &BigInt::one());
    *den = den.mul_term(&m, &BigInt::one());
    true
}

/// Applies `cos^2 = 1 - sin^2` and `root(b)^D = b` until stable.
fn reduce(p: &mut Poly) -> bool {
    let mut changed = false;
    loop {
        let mut round = false;
        for v in p.vars() {
            let e = kernel::entry(v);
            match &e.kind {
                Kind::Cos(_) if p.degree(v) >= 2 => {
                    let s = e.partner.unwrap();
                    let rep = Poly::one().sub(&Poly::var(s).pow(2));
                    *p = subst_power(p, v, 2, &rep);
                    round = true;
                }
                Kind::Root(b) if p.degree(v) >= ROOT_INDEX => {
                    *p = subst_power(p, v, ROOT_INDEX, b);
                    round = true;
                }
                _ => {}
            }
        }
        if !round {
            return changed;
        }
        changed = true;
    }
}

/// Replaces `v^(q*k + r)` by `v^r * rep^q`.
fn subst_power(p: &Poly, v: Var, k: u32, rep: &Poly) -> Poly {
    let mut grouped: BTreeMap<u32, Vec<(Mono, BigInt)>> = BTreeMap::new();
    for (m, c) in p.terms() {
        let e = m.degree(v);
        grouped.entry(e / k).or_default().push((m.with_degree(v, e % k), c.clone()));
    }
    let mut acc = Poly::zero();
    let mut pw = Poly::one();
    let mut cur = 0;
    for (q, ts) in grouped {
        while cur < q {
            pw = pw.mul(rep);
            cur += 1;
        }
        acc = acc.add(&Poly::from_terms(ts).mul(&pw));
    }
    acc
}

type RankedKey = SmallVec<[(u32, u32); 4]>;

fn ranked_key(m: &Mono, ranks: &[u32]) -> RankedKey {
    let mut k: RankedKey = m.pairs().iter().map(|&(v, e)| (ranks[v as usize], e)).collect();
    k.sort_unstable();
    k
}

/// Same shape as the monomial order, on ranks instead of ids.
pub(crate) fn ranked_cmp(a: &RankedKey, b: &RankedKey) -> Ordering {
    let mut i = 0;
    loop {
        match (a.get(i), b.get(i)) {
            (None, None) => return Ordering::Equal,
            (Some(_), None) => return Ordering::Greater,
            (None, Some(_)) => return Ordering::Less,
            (Some(&(va, ea)), Some(&(vb, eb))) => {
                if va != vb {
                    return if va < vb { Ordering::Greater } else { Ordering::Less };
                }
                if ea != eb {
                    return ea.cmp(&eb);
                }
            }
        }
        i += 1;
    }
}

fn ranked_lead_negative(p: &Poly) -> bool {
    if p.len() == 1 {
        return p.lc().is_negative();
    }
    let ranks = kernel::ranks();
    let mut best: Option<(RankedKey, &BigInt)> = None;
    for (m, c) in p.terms() {
        let k = ranked_key(m, &ranks);
        match &best {
            Some((bk, _)) if ranked_cmp(&k, bk) != Ordering::Greater => {}
            _ => best = Some((k, c)),
        }
    }
    best.map(|b| b.1.is_negative()).unwrap_or(false)
}

/// Terms of `p` in descending name-ranked order.
pub(crate) fn ranked_terms(p: &Poly) -> Vec<(Mono, BigInt)> {
    let ranks = kernel::ranks();
    let mut t: Vec<(RankedKey, Mono, BigInt)> =
        p.terms().iter().map(|(m, c)| (ranked_key(m, &ranks), m.clone(), c.clone())).collect();
    t.sort_by(|a, b| ranked_cmp(&b.0, &a.0));
    t.into_iter().map(|(_, m, c)| (m, c)).collect()
}

/// Sorts kernels of a monomial by rank.
pub(crate) fn ranked_vars(m: &Mono) -> Vec<(Var, u32)> {
    let ranks = kernel::ranks();
    let mut v: Vec<(Var, u32)> = m.pairs().to_vec();
    v.sort_by_key(|p| ranks[p.0 as usize]);
    v
}

// ---------------------------------------------------------------------------
// elementary functions

pub fn exp(u: &RatFn) -> RatFn {
    if u.is_zero() {
        return RatFn::one();
    }
    if u.den.is_constant() {
        let d = u.den.lc();
        let mut res = RatFn::one();
        for (m, c) in u.num.terms() {
            let q = BigRational::new(c.clone(), d.clone());
            if let [(v, 1)] = m.pairs() {
                if let Kind::Ln(w) = &kernel::entry(*v).kind {
                    if let Ok(p) = w.pow_rat(&q) {
                        res = res.mul(&p);
                        continue;
                    }
                }
            }
            let arg = RatFn { num: Poly::term(m.clone(), BigInt::one()), den: Poly::constant(q.denom().clone()) };
            let k = kernel::intern(Kind::Exp(arg));
            let p = q.numer().to_i64().expect("exponent too large");
            res = res.mul(&RatFn::var(k).powi(p));
        }
        return res;
    }
    if ranked_lead_negative(&u.num) {
        let k = kernel::intern(Kind::Exp(u.neg()));
        RatFn::var(k).powi(-1)
    } else {
        RatFn::var(kernel::intern(Kind::Exp(u.clone())))
    }
}

pub fn ln(u: &RatFn) -> Result<RatFn, ExprError> {
    if u.is_zero() {
        return Err(ExprError::LogOfZero);
    }
    if u.is_one() {
        return Ok(RatFn::zero());
    }
    // ln of a product of exponentials
    if u.num.is_monomial() && u.den.is_monomial() && u.num.lc().is_one() && u.den.lc().is_one() {
        let mut acc = RatFn::zero();
        let mut ok = true;
        for (p, sign) in [(&u.num, 1i64), (&u.den, -1)] {
            for &(v, e) in p.terms()[0].0.pairs() {
                match &kernel::entry(v).kind {
                    Kind::Exp(w) => acc = acc.add(&w.scale(&BigRational::from_integer(BigInt::from(sign * e as i64)))),
                    _ => ok = false,
                }
            }
        }
        if ok {
            return Ok(acc);
        }
    }
    Ok(RatFn::var(kernel::intern(Kind::Ln(u.clone()))))
}

pub fn sin(u: &RatFn) -> RatFn {
    if u.is_zero() {
        return RatFn::zero();
    }
    if ranked_lead_negative(&u.num) {
        RatFn::var(kernel::intern(Kind::Sin(u.neg()))).neg()
    } else {
        RatFn::var(kernel::intern(Kind::Sin(u.clone())))
    }
}

pub fn cos(u: &RatFn) -> RatFn {
    if u.is_zero() {
        return RatFn::one();
    }
    let arg = if ranked_lead_negative(&u.num) { u.neg() } else { u.clone() };
    RatFn::var(kernel::intern(Kind::Cos(arg)))
}

pub fn tan(u: &RatFn) -> RatFn {
    sin(u).div(&cos(u))
}

// ---------------------------------------------------------------------------
// rational powers

fn poly_pow_rat(p: &Poly, r: &BigRational) -> Result<RatFn, ExprError> {
    if p.is_one() {
        return Ok(RatFn::one());
    }
    let content = p.content();
    let mono = p.mono_content();
    let mut prim = p.div_int(&content).div_mono(&mono);
    let mut negative = false;
    if prim.lc().is_negative() {
        prim = prim.neg();
        negative = true;
    }
    let mut res = int_pow_rat(&content, r)?.mul(&mono_pow_rat(&mono, r)?);
    if negative {
        if r.denom().is_odd() {
            if r.numer().is_odd() {
                res = res.neg();
            }
        } else if !prim.is_one() {
            prim = prim.neg();
        } else {
            res = res.mul(&base_pow(&Poly::from_i64(-1), r)?);
        }
    }
    if !prim.is_one() {
        res = res.mul(&prim_pow_rat(prim, r)?);
    }
    Ok(res)
}

fn int_pow_rat(n: &BigInt, r: &BigRational) -> Result<RatFn, ExprError> {
    let mut res = RatFn::one();
    for (p, e) in factor_int(n) {
        let t = r * BigRational::from_integer(BigInt::from(e));
        res = res.mul(&base_pow(&Poly::constant(p), &t)?);
    }
    Ok(res)
}

/// Trial-division factorisation; a leftover cofactor is returned as one factor.
fn factor_int(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut out = Vec::new();
    let mut m = n.abs();
    let mut d = BigInt::from(2);
    let limit = BigInt::from(100_000);
    while &d * &d <= m && d < limit {
        let mut e = 0;
        while (&m % &d).is_zero() {
            m /= &d;
            e += 1;
        }
        if e > 0 {
            out.push((d.clone(), e));
        }
        d += 1;
    }
    if m > BigInt::one() {
        // the cofactor may itself be a perfect power
        let mut base = m;
        let mut mult = 1u32;
        for k in [2u32, 3, 5, 7, 11, 13] {
            loop {
                let rt = base.nth_root(k);
                if rt.pow(k) == base && rt > BigInt::one() {
                    base = rt;
                    mult *= k;
                } else {
                    break;
                }
            }
        }
        out.push((base, mult));
    }
    out
}

fn mono_pow_rat(m: &Mono, r: &BigRational) -> Result<RatFn, ExprError> {
    let mut res = RatFn::one();
    for &(v, e) in m.pairs() {
        let t = r * BigRational::from_integer(BigInt::from(e));
        let e_ = kernel::entry(v);
        let f = match &e_.kind {
            Kind::Exp(u) => exp(&u.scale(&t)),
            Kind::Root(b) => base_pow(b, &(t / BigRational::from_integer(BigInt::from(ROOT_INDEX))))?,
            _ => base_pow(&Poly::var(v), &t)?,
        };
        res = res.mul(&f);
    }
    Ok(res)
}

/// `b^t` for a base that is not split further.
fn base_pow(b: &Poly, t: &BigRational) -> Result<RatFn, ExprError> {
    let fl = t.floor();
    let fr = t - &fl;
    let fl = fl.to_integer().to_i64().ok_or_else(|| ExprError::UnsupportedPower(t.to_string()))?;
    let mut res = RatFn::from_poly(b.clone()).powi(fl);
    if !fr.is_zero() {
        let k = fr * BigRational::from_integer(BigInt::from(ROOT_INDEX));
        if !k.is_integer() {
            return Err(ExprError::UnsupportedPower(t.to_string()));
        }
        let k = k.to_integer().to_i64().unwrap();
        let root = kernel::intern(Kind::Root(b.clone()));
        res = res.mul(&RatFn::var(root).powi(k));
    }
    Ok(res)
}

fn prim_pow_rat(mut g: Poly, r: &BigRational) -> Result<RatFn, ExprError> {
    let mut res = RatFn::one();
    // 1 - sin(u)^2 = cos(u)^2
    for v in g.vars() {
        let e = kernel::entry(v);
        if let Kind::Sin(u) = &e.kind {
            let f = Poly::one().sub(&Poly::var(v).pow(2));
            let mut n = 0u32;
            while let Some(q) = g.exact_div(&f) {
                g = q;
                n += 1;
                if g.is_constant() {
                    break;
                }
            }
            if n > 0 {
                let c = kernel::intern(Kind::Cos(u.clone()));
                res = res.mul(&mono_pow_rat(&Mono::var(c, 2 * n), r)?);
            }
        }
    }
    if let Some(c) = g.as_constant() {
        // leftover sign
        if c == BigInt::from(-1) {
            res = res.mul(&poly_pow_rat(&g, r)?);
        }
        return Ok(res);
    }
    let (h, k) = perfect_power(&g);
    let t = r * BigRational::from_integer(BigInt::from(k));
    if k > 1 {
        return Ok(res.mul(&poly_pow_rat(&h, &t)?));
    }
    Ok(res.mul(&base_pow(&h, &t)?))
}

/// Writes `g = h^k` with `k` as large as found.
fn perfect_power(g: &Poly) -> (Poly, u32) {
    let mut h = g.clone();
    let mut k = 1;
    for p in [2u32, 3, 5, 7, 11, 13] {
        while let Some(rt) = poly_nth_root(&h, p) {
            h = rt;
            k *= p;
        }
    }
    (h, k)
}

/// Exact `k`-th root of a polynomial, if it has one.
pub(crate) fn poly_nth_root(g: &Poly, k: u32) -> Option<Poly> {
    if g.is_constant() {
        return None;
    }
    let (lm, lc) = g.lead()?;
    if lm.pairs().iter().any(|&(_, e)| e % k != 0) {
        return None;
    }
    if lc.is_negative() && k % 2 == 0 {
        return None;
    }
    let a = lc.nth_root(k);
    if &a.pow(k) != lc {
        return None;
    }
    let hm = Mono::from_pairs(lm.pairs().iter().map(|&(v, e)| (v, e / k)).collect());
    // quick rejection on the trailing term
    let (tm, tc) = g.terms().last()?;
    if tm.pairs().iter().any(|&(_, e)| e % k != 0) || (tc.is_negative() && k % 2 == 0) {
        return None;
    }
    let mut h = Poly::term(hm.clone(), a.clone());
    let dm = hm.pow(k - 1);
    let dc = BigInt::from(k) * a.pow(k - 1);
    for _ in 0..(g.len() + 8) {
        let rem = g.sub(&h.pow(k));
        if rem.is_zero() {
            return Some(h);
        }
        let (rm, rc) = rem.lead()?;
        let qm = rm.div(&dm)?;
        let (qc, rr) = rc.div_rem(&dc);
        if !rr.is_zero() || qm >= hm {
            return None;
        }
        h = h.add(&Poly::term(qm, qc));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn cancellation() {
        let x = RatFn::x();
        let y = RatFn::y();
        let r = x.mul(&x).sub(&y.mul(&y)).div(&x.sub(&y));
        assert_eq!(r, x.add(&y));
    }

    #[test]
    fn exp_merges() {
        let x = RatFn::x();
        let y = RatFn::y();
        let a = exp(&x).mul(&exp(&y));
        let b = exp(&x.add(&y));
        assert!(a.sub(&b).is_zero());
        assert!(exp(&x).mul(&exp(&x.neg())).is_one());
    }

    #[test]
    fn trig_identity() {
        let y = RatFn::y();
        let s = sin(&y);
        let c = cos(&y);
        assert!(s.mul(&s).add(&c.mul(&c)).is_one());
        assert!(sin(&y.neg()).add(&s).is_zero());
        // d/dy tan y = 1/cos^2 y
        let t = tan(&y).diff(kernel::Y);
        assert!(t.sub(&c.mul(&c).inv().unwrap()).is_zero());
    }

    #[test]
    fn roots() {
        let x = RatFn::x();
        let y = RatFn::y();
        let s = sin(&y);
        let f = x.powi(5).mul(&s.powi(5)).scale(&q(12, 1));
        let g = f.pow_rat(&q(1, 5)).unwrap();
        let h = g.pow_rat(&q(5, 1)).unwrap();
        assert_eq!(h, f);
        let sq = RatFn::from_int(12).sqrt().unwrap();
        assert_eq!(sq.mul(&sq), RatFn::from_int(12));
        let r = x.mul(&x).add(&RatFn::one()).sqrt().unwrap();
        assert_eq!(r.mul(&r), x.mul(&x).add(&RatFn::one()));
        // sqrt(x^2 (1 - sin^2 y)) = x cos y
        let c = cos(&y);
        let w = x.mul(&x).mul(&RatFn::one().sub(&s.mul(&s))).sqrt().unwrap();
        assert_eq!(w, x.mul(&c));
        // exact root of a square
        let p = x.add(&y).powi(2).mul(&RatFn::from_int(4));
        assert_eq!(p.sqrt().unwrap(), x.add(&y).mul(&RatFn::from_int(2)));
        // odd root of a negative constant
        assert_eq!(RatFn::from_int(-8).pow_rat(&q(1, 3)).unwrap(), RatFn::from_int(-2));
    }

    #[test]
    fn derivative_rules() {
        let x = RatFn::x();
        let y = RatFn::y();
        let f = x.mul(&exp(&y.mul(&x)));
        let fx = f.diff(kernel::X);
        let expect = exp(&x.mul(&y)).mul(&RatFn::one().add(&x.mul(&y)));
        assert!(fx.sub(&expect).is_zero());
        let l = ln(&x.mul(&x).add(&y)).unwrap();
        let lx = l.diff(kernel::X);
        assert!(lx.sub(&x.scale(&q(2, 1)).div(&x.mul(&x).add(&y))).is_zero());
        let r = x.sqrt().unwrap();
        let rx = r.diff(kernel::X);
        assert!(rx.sub(&r.div(&x).scale(&q(1, 2))).is_zero());
    }

    #[test]
    fn substitution() {
        let x = RatFn::x();
        let y = RatFn::y();
        let f = x.mul(&x).add(&y).div(&x.add(&RatFn::one()));
        let g = f.subs_symbol(kernel::X, &y.add(&RatFn::one())).unwrap();
        let expect = y.add(&RatFn::one()).powi(2).add(&y).div(&y.add(&RatFn::from_int(2)));
        assert_eq!(g, expect);
        let e = exp(&x).subs_symbol(kernel::X, &ln(&y).unwrap()).unwrap();
        assert_eq!(e, y);
    }

    #[test]
    fn coefficient_extraction() {
        let p = RatFn::symbol("yp");
        let x = RatFn::x();
        let f = p.powi(3).mul(&x).add(&p.scale(&q(3, 1))).div(&x.add(&RatFn::one()));
        let cs = f.coefficients_in(kernel::symbol("yp")).unwrap();
        assert_eq!(cs[&3], x.div(&x.add(&RatFn::one())));
        assert_eq!(cs[&1], RatFn::from_int(3).div(&x.add(&RatFn::one())));
    }
}
