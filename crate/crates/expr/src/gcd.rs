//! Greatest common divisors of multivariate integer polynomials.
//!
//! Small structural cases (monomial factors, disjoint variable sets, variables
//! that only occur with exponents in `k*N`) are stripped first; the remaining
//! problem is solved by the dense modular algorithm: gcds modulo word-sized
//! primes computed by recursive evaluation/interpolation, lifted with the
//! Chinese remainder theorem and checked by exact division over the integers.

use crate::mono::{Mono, Var};
use crate::poly::Poly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;
use std::collections::{BTreeMap, BTreeSet};

/// Gcd with positive leading coefficient (zero only if both inputs are zero).
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return positive(b.clone());
    }
    if b.is_zero() {
        return positive(a.clone());
    }
    let ca = a.content();
    let cb = b.content();
    let ig = ca.gcd(&cb);
    let a1 = a.div_int(&ca);
    let b1 = b.div_int(&cb);
    let ma = a1.mono_content();
    let mb = b1.mono_content();
    let mg = ma.gcd(&mb);
    let a2 = a1.div_mono(&ma);
    let b2 = b1.div_mono(&mb);
    let core = gcd_primitive(&a2, &b2);
    positive(core.mul_term(&mg, &ig))
}

fn positive(p: Poly) -> Poly {
    if p.lc().is_negative() {
        p.neg()
    } else {
        p
    }
}

/// Gcd of two primitive polynomials without monomial content.
fn gcd_primitive(a: &Poly, b: &Poly) -> Poly {
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a == b || *a == b.neg() {
        return positive(a.clone());
    }
    let va = a.vars();
    let vb = b.vars();
    if va != vb {
        let common: BTreeSet<Var> = va.intersection(&vb).copied().collect();
        if common.is_empty() {
            return Poly::one();
        }
        let mut parts: Vec<Poly> = Vec::new();
        for (p, vars) in [(a, &va), (b, &vb)] {
            if vars.len() == common.len() {
                parts.push(p.clone());
            } else {
                let outer: BTreeSet<Var> = vars.difference(&common).copied().collect();
                parts.extend(p.coefficients_in(|v| outer.contains(&v)).into_values());
            }
        }
        // smallest first keeps the running gcd cheap
        parts.sort_by_key(|p| p.len());
        let mut h = parts[0].clone();
        for p in &parts[1..] {
            if h.is_constant() {
                return Poly::one();
            }
            h = gcd(&h, p);
        }
        return if h.is_constant() { Poly::one() } else { h };
    }
    let vars: Vec<Var> = va.into_iter().collect();
    // deflation: v^g -> v where g divides every exponent of v
    let mut defl: Vec<u32> = vec![0; vars.len()];
    for p in [a, b] {
        for (m, _) in p.terms() {
            for (i, &v) in vars.iter().enumerate() {
                defl[i] = defl[i].gcd(&m.degree(v));
            }
        }
    }
    for d in defl.iter_mut() {
        if *d == 0 {
            *d = 1;
        }
    }
    match modular_gcd(a, b, &vars, &defl) {
        Some(g) => g,
        None => Poly::one(),
    }
}

// ---------------------------------------------------------------------------
// packed exponent layout

#[derive(Clone, Debug)]
struct Layout {
    shifts: Vec<u32>,
    masks: Vec<u128>,
}

impl Layout {
    fn new(widths: &[u32]) -> Option<Layout> {
        let total: u32 = widths.iter().sum();
        if total > 127 {
            return None;
        }
        let mut shifts = vec![0; widths.len()];
        let mut acc = 0;
        for i in (0..widths.len()).rev() {
            shifts[i] = acc;
            acc += widths[i];
        }
        let masks = widths.iter().map(|&w| (1u128 << w) - 1).collect();
        Some(Layout { shifts, masks })
    }

    #[inline]
    fn field(&self, key: u128, i: usize) -> u32 {
        ((key >> self.shifts[i]) & self.masks[i]) as u32
    }

    #[inline]
    fn clear(&self, key: u128, i: usize) -> u128 {
        key & !(self.masks[i] << self.shifts[i])
    }

    #[inline]
    fn unit(&self, i: usize) -> u128 {
        1u128 << self.shifts[i]
    }

    fn divides(&self, d: u128, m: u128, nv: usize) -> bool {
        (0..nv).all(|i| self.field(d, i) <= self.field(m, i))
    }
}

type ZP = Vec<(u128, BigInt)>;
type MP = Vec<(u128, u64)>;
type UP = Vec<u64>;

fn modular_gcd(a: &Poly, b: &Poly, vars: &[Var], defl: &[u32]) -> Option<Poly> {
    let degs: Vec<u32> = vars
        .iter()
        .enumerate()
        .map(|(i, &v)| a.degree(v).max(b.degree(v)) / defl[i])
        .collect();
    // var with the largest degree becomes the univariate base variable
    let mut order: Vec<usize> = (0..vars.len()).collect();
    order.sort_by(|&i, &j| degs[j].cmp(&degs[i]).then(i.cmp(&j)));
    let widths: Vec<u32> = order.iter().map(|&i| bits(4 * degs[i] + 16)).collect();
    let layout = Layout::new(&widths)?;
    let pack = |p: &Poly| -> ZP {
        let mut t: ZP = p
            .terms()
            .iter()
            .map(|(m, c)| {
                let mut key = 0u128;
                for (slot, &i) in order.iter().enumerate() {
                    let e = (m.degree(vars[i]) / defl[i]) as u128;
                    key |= e << layout.shifts[slot];
                }
                (key, c.clone())
            })
            .collect();
        t.sort_by(|x, y| y.0.cmp(&x.0));
        t
    };
    let unpack = |z: &ZP| -> Poly {
        Poly::from_terms(
            z.iter()
                .map(|(key, c)| {
                    let pairs = order
                        .iter()
                        .enumerate()
                        .map(|(slot, &i)| (vars[i], layout.field(*key, slot) * defl[i]))
                        .collect();
                    (Mono::from_pairs(pairs), c.clone())
                })
                .collect(),
        )
    };
    let pa = pack(a);
    let pb = pack(b);
    let nv = vars.len();
    let verify = |cand: &ZP| -> Option<Poly> {
        let h = unpack(cand);
        if a.exact_div(&h).is_some() && b.exact_div(&h).is_some() {
            Some(h)
        } else {
            None
        }
    };
    mgcd(&pa, &pb, &layout, nv, verify).map(positive)
}

fn bits(n: u32) -> u32 {
    32 - n.leading_zeros()
}

static PRIMES: Lazy<Vec<u64>> = Lazy::new(|| {
    let mut out = Vec::new();
    let mut n: u64 = (1 << 31) - 1;
    while out.len() < 2000 {
        if is_prime(n) {
            out.push(n);
        }
        n -= 2;
    }
    out
});

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn mgcd(a: &ZP, b: &ZP, layout: &Layout, nv: usize, verify: impl Fn(&ZP) -> Option<Poly>) -> Option<Poly> {
    let lca = &a[0].1;
    let lcb = &b[0].1;
    let gamma = lca.gcd(lcb);
    let mut acc: Option<(ZP, BigInt, u128)> = None;
    let mut prev: Option<ZP> = None;
    for &p in PRIMES.iter() {
        let bp = BigInt::from(p);
        if (lca % &bp).is_zero() || (lcb % &bp).is_zero() {
            continue;
        }
        let ap = reduce(a, p);
        let bpol = reduce(b, p);
        let cp = match pgcd(&ap, &bpol, layout, nv, p) {
            Some(c) => c,
            None => continue,
        };
        if cp.len() == 1 && cp[0].0 == 0 {
            return Some(Poly::one());
        }
        let gp = mod_big(&gamma, p);
        let cp: MP = cp.into_iter().map(|(k, c)| (k, mulmod(c, gp, p))).collect();
        let lm = cp[0].0;
        match &mut acc {
            Some((h, m, lm_cur)) if lm == *lm_cur => {
                // CRT: h + m * ((c - h) * m^-1 mod p)
                let minv = invmod(mod_big(m, p), p);
                let mut map: BTreeMap<u128, BigInt> = h.drain(..).collect();
                let mut keys: BTreeSet<u128> = map.keys().copied().collect();
                let cmap: BTreeMap<u128, u64> = cp.into_iter().collect();
                keys.extend(cmap.keys().copied());
                for k in keys {
                    let old = map.get(&k).cloned().unwrap_or_else(BigInt::zero);
                    let c = *cmap.get(&k).unwrap_or(&0);
                    let oldp = mod_big(&old, p);
                    let t = mulmod(submod(c, oldp, p), minv, p);
                    let new = old + &*m * BigInt::from(t);
                    map.insert(k, new);
                }
                *m *= &bp;
                let mut v: ZP = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                v.reverse();
                *h = v;
            }
            Some((_, _, lm_cur)) if lm > *lm_cur => continue,
            _ => {
                acc = Some((cp.into_iter().map(|(k, c)| (k, BigInt::from(c))).collect(), bp.clone(), lm));
                prev = None;
                continue;
            }
        }
        let (h, m, _) = acc.as_ref().unwrap();
        let half: BigInt = m / 2;
        let sym: ZP = h
            .iter()
            .map(|(k, c)| (*k, if c > &half { c - m } else { c.clone() }))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        if prev.as_ref() == Some(&sym) {
            let mut content = BigInt::zero();
            for (_, c) in &sym {
                content = content.gcd(c);
            }
            let cand: ZP = sym.iter().map(|(k, c)| (*k, c / &content)).collect();
            if let Some(hp) = verify(&cand) {
                return Some(hp);
            }
        }
        prev = Some(sym);
    }
    None
}

fn reduce(a: &ZP, p: u64) -> MP {
    a.iter()
        .filter_map(|(k, c)| {
            let r = mod_big(c, p);
            if r == 0 {
                None
            } else {
                Some((*k, r))
            }
        })
        .collect()
}

fn mod_big(c: &BigInt, p: u64) -> u64 {
    let r = c.mod_floor(&BigInt::from(p));
    r.to_u64().unwrap()
}

#[inline]
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

#[inline]
fn addmod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
fn submod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

// ---------------------------------------------------------------------------
// univariate dense polynomials over Z_p

fn up_trim(mut a: UP) -> UP {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn up_deg(a: &UP) -> usize {
    a.len().saturating_sub(1)
}

fn up_eval(a: &UP, x: u64, p: u64) -> u64 {
    let mut r = 0;
    for &c in a.iter().rev() {
        r = addmod(mulmod(r, x, p), c, p);
    }
    r
}

fn up_mul(a: &UP, b: &UP, p: u64) -> UP {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = addmod(out[i + j], mulmod(x, y, p), p);
        }
    }
    up_trim(out)
}

fn up_divrem(a: &UP, b: &UP, p: u64) -> (UP, UP) {
    let mut r = a.clone();
    if b.is_empty() {
        panic!("univariate division by zero");
    }
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let inv = invmod(*b.last().unwrap(), p);
    let mut q = vec![0u64; r.len() - b.len() + 1];
    for i in (0..q.len()).rev() {
        let c = mulmod(r[i + b.len() - 1], inv, p);
        q[i] = c;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                r[i + j] = submod(r[i + j], mulmod(c, bj, p), p);
            }
        }
    }
    (up_trim(q), up_trim(r))
}

fn up_monic(a: UP, p: u64) -> UP {
    match a.last() {
        None => a,
        Some(&l) => {
            let inv = invmod(l, p);
            a.into_iter().map(|c| mulmod(c, inv, p)).collect()
        }
    }
}

fn up_gcd(a: &UP, b: &UP, p: u64) -> UP {
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_empty() {
        let (_, r) = up_divrem(&x, &y, p);
        x = y;
        y = r;
    }
    up_monic(x, p)
}

// ---------------------------------------------------------------------------
// multivariate polynomials over Z_p in the packed layout

fn mp_monic(a: MP, p: u64) -> MP {
    match a.first() {
        None => a,
        Some(&(_, l)) => {
            let inv = invmod(l, p);
            a.into_iter().map(|(k, c)| (k, mulmod(c, inv, p))).collect()
        }
    }
}

fn mp_scale(a: &MP, s: u64, p: u64) -> MP {
    if s == 0 {
        return Vec::new();
    }
    a.iter().map(|&(k, c)| (k, mulmod(c, s, p))).collect()
}

fn mp_add(a: &MP, b: &MP, p: u64) -> MP {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i].0 > b[j].0 {
            out.push(a[i]);
            i += 1;
        } else if a[i].0 < b[j].0 {
            out.push(b[j]);
            j += 1;
        } else {
            let c = addmod(a[i].1, b[j].1, p);
            if c != 0 {
                out.push((a[i].0, c));
            }
            i += 1;
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

fn mp_neg(a: &MP, p: u64) -> MP {
    a.iter().map(|&(k, c)| (k, p - c)).collect()
}

/// Groups by everything but var `v` (the lowest active field).
fn mp_groups(a: &MP, l: &Layout, v: usize) -> Vec<(u128, UP)> {
    let mut out: Vec<(u128, UP)> = Vec::new();
    for &(k, c) in a {
        let pre = l.clear(k, v);
        let e = l.field(k, v) as usize;
        match out.last_mut() {
            Some((lp, up)) if *lp == pre => {
                if up.len() <= e {
                    up.resize(e + 1, 0);
                }
                up[e] = c;
            }
            _ => {
                let mut up = vec![0u64; e + 1];
                up[e] = c;
                out.push((pre, up));
            }
        }
    }
    out
}

fn mp_from_groups(g: &[(u128, UP)], l: &Layout, v: usize) -> MP {
    let mut out = Vec::new();
    for (pre, up) in g {
        for e in (0..up.len()).rev() {
            if up[e] != 0 {
                out.push((pre + (e as u128) * l.unit(v), up[e]));
            }
        }
    }
    out
}

fn mp_eval(a: &MP, l: &Layout, v: usize, x: u64, p: u64) -> MP {
    let mut out: MP = Vec::new();
    let mut pows: Vec<u64> = vec![1];
    for &(k, c) in a {
        let pre = l.clear(k, v);
        let e = l.field(k, v) as usize;
        while pows.len() <= e {
            let n = mulmod(*pows.last().unwrap(), x, p);
            pows.push(n);
        }
        let t = mulmod(c, pows[e], p);
        match out.last_mut() {
            Some((lp, lc)) if *lp == pre => *lc = addmod(*lc, t, p),
            _ => out.push((pre, t)),
        }
    }
    out.retain(|t| t.1 != 0);
    out
}

fn mp_mul_up(a: &MP, q: &UP, l: &Layout, v: usize, p: u64) -> MP {
    let mut map: BTreeMap<u128, u64> = BTreeMap::new();
    for &(k, c) in a {
        for (e, &qc) in q.iter().enumerate() {
            if qc == 0 {
                continue;
            }
            let key = k + (e as u128) * l.unit(v);
            let t = mulmod(c, qc, p);
            let slot = map.entry(key).or_insert(0);
            *slot = addmod(*slot, t, p);
        }
    }
    let mut out: MP = map.into_iter().filter(|t| t.1 != 0).collect();
    out.reverse();
    out
}

fn mp_divides(a: &MP, d: &MP, l: &Layout, nv: usize, p: u64) -> bool {
    if d.is_empty() {
        return false;
    }
    let (dlm, dlc) = d[0];
    let inv = invmod(dlc, p);
    let mut rem: BTreeMap<u128, u64> = a.iter().copied().collect();
    while let Some((&m, &c)) = rem.iter().next_back() {
        if !l.divides(dlm, m, nv) {
            return false;
        }
        let qk = m - dlm;
        let qc = mulmod(c, inv, p);
        for &(dk, dc) in d.iter() {
            let key = qk + dk;
            let t = mulmod(qc, dc, p);
            let slot = rem.entry(key).or_insert(0);
            *slot = submod(*slot, t, p);
            if *slot == 0 {
                rem.remove(&key);
            }
        }
    }
    true
}

fn mp_is_const(a: &MP) -> bool {
    a.len() == 1 && a[0].0 == 0
}

/// Monic gcd over Z_p of polynomials in the active vars `0..nv`.
fn pgcd(a: &MP, b: &MP, l: &Layout, nv: usize, p: u64) -> Option<MP> {
    if a.is_empty() {
        return Some(mp_monic(b.clone(), p));
    }
    if b.is_empty() {
        return Some(mp_monic(a.clone(), p));
    }
    if mp_is_const(a) || mp_is_const(b) {
        return Some(vec![(0, 1)]);
    }
    let v = nv - 1;
    if nv == 1 {
        let ua = to_up(a, l);
        let ub = to_up(b, l);
        let g = up_gcd(&ua, &ub, p);
        return Some(from_up(&g, l, 0));
    }
    let ga = mp_groups(a, l, v);
    let gb = mp_groups(b, l, v);
    let ca = ga.iter().skip(1).fold(up_monic(ga[0].1.clone(), p), |acc, g| up_gcd(&acc, &g.1, p));
    let cb = gb.iter().skip(1).fold(up_monic(gb[0].1.clone(), p), |acc, g| up_gcd(&acc, &g.1, p));
    let c = up_gcd(&ca, &cb, p);
    let ga: Vec<(u128, UP)> = ga.into_iter().map(|(k, u)| (k, up_divrem(&u, &ca, p).0)).collect();
    let gb: Vec<(u128, UP)> = gb.into_iter().map(|(k, u)| (k, up_divrem(&u, &cb, p).0)).collect();
    let c_mp = from_up(&c, l, v);
    // primitive parts free of the other vars have gcd 1
    if (ga.len() == 1 && ga[0].0 == 0) || (gb.len() == 1 && gb[0].0 == 0) {
        return Some(mp_monic(c_mp, p));
    }
    let a1 = mp_from_groups(&ga, l, v);
    let b1 = mp_from_groups(&gb, l, v);
    let lca = ga[0].1.clone();
    let lcb = gb[0].1.clone();
    let g = up_gcd(&lca, &lcb, p);
    let dega = ga.iter().map(|x| up_deg(&x.1)).max().unwrap_or(0);
    let degb = gb.iter().map(|x| up_deg(&x.1)).max().unwrap_or(0);
    let bound = dega.min(degb) + up_deg(&g);
    let mut h: Option<(MP, UP, u128)> = None;
    let mut beta: u64 = 0;
    let mut extra = 0usize;
    loop {
        beta += 1;
        if beta >= p {
            return None;
        }
        if up_eval(&g, beta, p) == 0 || up_eval(&lca, beta, p) == 0 || up_eval(&lcb, beta, p) == 0 {
            continue;
        }
        let ab = mp_eval(&a1, l, v, beta, p);
        let bb = mp_eval(&b1, l, v, beta, p);
        let cb_ = pgcd(&ab, &bb, l, nv - 1, p)?;
        if mp_is_const(&cb_) {
            return Some(mp_monic(c_mp, p));
        }
        let gb_ = up_eval(&g, beta, p);
        let cbs = mp_scale(&cb_, gb_, p);
        let lm = cbs[0].0;
        match &mut h {
            Some((hh, q, lm_cur)) if lm == *lm_cur => {
                let hb = mp_eval(hh, l, v, beta, p);
                let diff = mp_add(&cbs, &mp_neg(&hb, p), p);
                if !diff.is_empty() {
                    let qb = up_eval(q, beta, p);
                    let corr = mp_mul_up(&mp_scale(&diff, invmod(qb, p), p), q, l, v, p);
                    *hh = mp_add(hh, &corr, p);
                }
                *q = up_mul(q, &vec![p - beta, 1], p);
            }
            Some((_, _, lm_cur)) if lm > *lm_cur => continue,
            _ => {
                h = Some((cbs, vec![p - beta, 1], lm));
            }
        }
        let (hh, q, _) = h.as_ref().unwrap();
        if up_deg(q) > bound {
            let hg = mp_groups(hh, l, v);
            let hc = hg.iter().skip(1).fold(up_monic(hg[0].1.clone(), p), |acc, g| up_gcd(&acc, &g.1, p));
            let hgp: Vec<(u128, UP)> = hg.into_iter().map(|(k, u)| (k, up_divrem(&u, &hc, p).0)).collect();
            let hp = mp_from_groups(&hgp, l, v);
            if mp_divides(&a1, &hp, l, nv, p) && mp_divides(&b1, &hp, l, nv, p) {
                return Some(mp_monic(mp_mul_up(&hp, &c, l, v, p), p));
            }
            extra += 1;
            if extra > bound + 8 {
                return None;
            }
        }
    }
}

fn to_up(a: &MP, l: &Layout) -> UP {
    let mut out: UP = Vec::new();
    for &(k, c) in a {
        let e = l.field(k, 0) as usize;
        if out.len() <= e {
            out.resize(e + 1, 0);
        }
        out[e] = c;
    }
    up_trim(out)
}

fn from_up(u: &UP, l: &Layout, v: usize) -> MP {
    let mut out = Vec::new();
    for e in (0..u.len()).rev() {
        if u[e] != 0 {
            out.push(((e as u128) * l.unit(v), u[e]));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: Var) -> Poly {
        Poly::var(i)
    }
    fn c(n: i64) -> Poly {
        Poly::from_i64(n)
    }

    #[test]
    fn univariate() {
        // (x+1)(x-2) and (x+1)(x+3)
        let a = v(0).add(&c(1)).mul(&v(0).sub(&c(2)));
        let b = v(0).add(&c(1)).mul(&v(0).add(&c(3)));
        assert_eq!(gcd(&a, &b), v(0).add(&c(1)));
    }

    #[test]
    fn multivariate_common_factor() {
        let x = v(0);
        let y = v(1);
        let z = v(2);
        let f = x.mul(&y).add(&z.pow(2)).add(&c(3)); // xy + z^2 + 3
        let a = f.mul(&x.sub(&y).pow(2)).mul(&c(6));
        let b = f.mul(&x.add(&z)).mul(&c(4));
        assert_eq!(gcd(&a, &b), f.scale(&BigInt::from(2)));
    }

    #[test]
    fn coprime_and_content() {
        let x = v(0);
        let y = v(1);
        let a = x.pow(2).add(&y.pow(2));
        let b = x.add(&y);
        assert!(gcd(&a, &b).is_one());
        let m = x.pow(3).mul(&y);
        let n = x.mul(&y.pow(2)).add(&x.pow(2).mul(&y));
        assert_eq!(gcd(&m, &n), x.mul(&y));
    }

    #[test]
    fn disjoint_extra_vars() {
        let x = v(0);
        let y = v(1);
        let a_ = v(5);
        let p = x.add(&y);
        let a = p.mul(&a_.add(&c(1)));
        let b = p.mul(&x.sub(&c(7)));
        assert_eq!(gcd(&a, &b), p);
    }

    #[test]
    fn deflated_exponents() {
        let x = v(0);
        let y = v(1);
        let a = x.pow(2000).sub(&y.pow(2000));
        let b = x.pow(1000).add(&y.pow(1000)).mul(&x.pow(500));
        let g = gcd(&a, &b);
        assert_eq!(g, x.pow(1000).add(&y.pow(1000)));
    }
}
