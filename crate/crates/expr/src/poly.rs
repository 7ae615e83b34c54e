//! Sparse multivariate polynomials with integer coefficients.

use crate::mono::{Mono, Var};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet, HashMap};

/// Terms are kept sorted by monomial, largest first, with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    pub(crate) terms: Vec<(Mono, BigInt)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(Mono::one(), c)] }
        }
    }

    pub fn from_i64(c: i64) -> Self {
        Poly::constant(BigInt::from(c))
    }

    pub fn var(v: Var) -> Self {
        Poly::term(Mono::var(v, 1), BigInt::one())
    }

    pub fn term(m: Mono, c: BigInt) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from unsorted, possibly repeated terms.
    pub fn from_terms(terms: Vec<(Mono, BigInt)>) -> Self {
        let mut map: BTreeMap<Mono, BigInt> = BTreeMap::new();
        for (m, c) in terms {
            *map.entry(m).or_insert_with(BigInt::zero) += c;
        }
        let mut out: Vec<(Mono, BigInt)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        out.reverse();
        Poly { terms: out }
    }

    pub fn terms(&self) -> &[(Mono, BigInt)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 if self.terms[0].0.is_one() => Some(self.terms[0].1.clone()),
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn lead(&self) -> Option<(&Mono, &BigInt)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn lc(&self) -> BigInt {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_else(BigInt::zero)
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        merge(self, o, false)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        merge(self, o, true)
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect() }
    }

    pub fn mul_term(&self, m: &Mono, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(a, k)| (a.mul(m), k * c)).collect() }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        if o.terms.len() == 1 {
            return self.mul_term(&o.terms[0].0, &o.terms[0].1);
        }
        if self.terms.len() == 1 {
            return o.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let (small, big) = if self.terms.len() <= o.terms.len() { (self, o) } else { (o, self) };
        let mut acc: HashMap<Mono, BigInt> = HashMap::with_capacity(big.terms.len() * 2);
        for (ma, ca) in &small.terms {
            for (mb, cb) in &big.terms {
                let m = ma.mul(mb);
                let p = ca * cb;
                match acc.get_mut(&m) {
                    Some(v) => *v += p,
                    None => {
                        acc.insert(m, p);
                    }
                }
            }
        }
        let mut terms: Vec<(Mono, BigInt)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Poly { terms }
    }

    pub fn pow(&self, mut n: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Gcd of the integer coefficients, always non-negative.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn div_int(&self, c: &BigInt) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, k)| (m.clone(), k / c)).collect() }
    }

    /// Largest monomial dividing every term.
    pub fn mono_content(&self) -> Mono {
        let mut it = self.terms.iter();
        let mut g = match it.next() {
            Some((m, _)) => m.clone(),
            None => return Mono::one(),
        };
        for (m, _) in it {
            if g.is_one() {
                break;
            }
            g = g.gcd(m);
        }
        g
    }

    pub fn div_mono(&self, m: &Mono) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(a, c)| (a.div(m).expect("monomial does not divide term"), c.clone()))
                .collect(),
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut s = BTreeSet::new();
        for (m, _) in &self.terms {
            for &(v, _) in m.pairs() {
                s.insert(v);
            }
        }
        s
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.iter().any(|(m, _)| m.degree(v) > 0)
    }

    pub fn degree(&self, v: Var) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree(v)).max().unwrap_or(0)
    }

    /// Formal partial derivative treating `v` as an independent indeterminate.
    pub fn formal_diff(&self, v: Var) -> Poly {
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split(v);
            if e > 0 {
                terms.push((rest.mul(&Mono::var(v, e - 1)), c * BigInt::from(e)));
            }
        }
        // removing one power of `v` from every term preserves the relative order
        Poly { terms }
    }

    /// Groups terms by the exponents of the vars selected by `outer`:
    /// `self = sum outer_mono * coeff`, coefficients free of the outer vars.
    pub fn coefficients_in(&self, outer: impl Fn(Var) -> bool) -> BTreeMap<Mono, Poly> {
        let mut groups: BTreeMap<Mono, Vec<(Mono, BigInt)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let om = m.restrict(&outer);
            let im = m.restrict(|v| !outer(v));
            groups.entry(om).or_default().push((im, c.clone()));
        }
        groups.into_iter().map(|(k, t)| (k, Poly::from_terms(t))).collect()
    }

    /// Exact division. Returns `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if d.terms.len() == 1 {
            let (dm, dc) = &d.terms[0];
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                let (q, r) = c.div_rem(dc);
                if !r.is_zero() {
                    return None;
                }
                terms.push((m.div(dm)?, q));
            }
            return Some(Poly { terms });
        }
        // cheap degree screen
        let (dlm, dlc) = d.lead().unwrap();
        for v in d.vars() {
            if self.degree(v) < d.degree(v) {
                return None;
            }
        }
        let (lm, _) = self.lead().unwrap();
        if !dlm.divides(lm) {
            return None;
        }
        let tail = &d.terms[1..];
        let mut rem: BTreeMap<Mono, BigInt> = self.terms.iter().cloned().collect();
        let mut q: Vec<(Mono, BigInt)> = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            let qm = m.div(dlm)?;
            let (qc, r) = c.div_rem(dlc);
            if !r.is_zero() {
                return None;
            }
            for (tm, tc) in tail {
                let nm = qm.mul(tm);
                let prod = &qc * tc;
                match rem.get_mut(&nm) {
                    Some(v) => {
                        *v -= prod;
                        if v.is_zero() {
                            rem.remove(&nm);
                        }
                    }
                    None => {
                        rem.insert(nm, -prod);
                    }
                }
            }
            q.push((qm, qc));
        }
        Some(Poly { terms: q })
    }

    /// Substitutes `v -> p` (a polynomial) everywhere.
    pub fn compose(&self, v: Var, p: &Poly) -> Poly {
        if !self.contains_var(v) {
            return self.clone();
        }
        let mut powers: Vec<Poly> = vec![Poly::one()];
        let mut acc = Poly::zero();
        let mut grouped: BTreeMap<u32, Vec<(Mono, BigInt)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split(v);
            grouped.entry(e).or_default().push((rest, c.clone()));
        }
        for (e, ts) in grouped {
            while powers.len() <= e as usize {
                let next = powers.last().unwrap().mul(p);
                powers.push(next);
            }
            acc = acc.add(&Poly::from_terms(ts).mul(&powers[e as usize]));
        }
        acc
    }

    pub fn map_coeffs(&self, f: impl Fn(&BigInt) -> BigInt) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))).collect())
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.terms.iter().map(|(_, c)| c.abs()).max().unwrap_or_else(BigInt::zero)
    }
}

fn merge(a: &Poly, b: &Poly, negate_b: bool) -> Poly {
    let (x, y) = (&a.terms, &b.terms);
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() && j < y.len() {
        match x[i].0.cmp(&y[j].0) {
            std::cmp::Ordering::Greater => {
                out.push(x[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Less => {
                let c = if negate_b { -&y[j].1 } else { y[j].1.clone() };
                out.push((y[j].0.clone(), c));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = if negate_b { &x[i].1 - &y[j].1 } else { &x[i].1 + &y[j].1 };
                if !c.is_zero() {
                    out.push((x[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(x[i..].iter().cloned());
    for t in &y[j..] {
        let c = if negate_b { -&t.1 } else { t.1.clone() };
        out.push((t.0.clone(), c));
    }
    Poly { terms: out }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Poly {
        Poly::var(0)
    }
    fn y() -> Poly {
        Poly::var(1)
    }

    #[test]
    fn arithmetic() {
        let p = x().add(&y());
        let q = x().sub(&y());
        let pq = p.mul(&q);
        let expect = x().mul(&x()).sub(&y().mul(&y()));
        assert_eq!(pq, expect);
        assert_eq!(pq.exact_div(&q), Some(p.clone()));
        assert_eq!(pq.exact_div(&x().add(&Poly::one())), None);
        assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn compose_and_diff() {
        let p = x().pow(3).add(&x().mul(&y()));
        let c = p.compose(0, &y().add(&Poly::one()));
        let expect = y().add(&Poly::one()).pow(3).add(&y().add(&Poly::one()).mul(&y()));
        assert_eq!(c, expect);
        assert_eq!(p.formal_diff(0), x().pow(2).scale(&BigInt::from(3)).add(&y()));
    }
}
