use smallvec::SmallVec;
use std::cmp::Ordering;

/// Index of a kernel in the global kernel table.
pub type Var = u32;

/// A power product of kernels, stored as `(var, exponent)` pairs sorted by var.
///
/// Monomials are ordered lexicographically with the smallest var id being the
/// most significant position.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Mono(pub(crate) SmallVec<[(Var, u32); 4]>);

impl Mono {
    pub fn one() -> Self {
        Mono(SmallVec::new())
    }

    pub fn var(v: Var, e: u32) -> Self {
        if e == 0 {
            return Mono::one();
        }
        let mut s = SmallVec::new();
        s.push((v, e));
        Mono(s)
    }

    pub fn from_pairs(mut pairs: Vec<(Var, u32)>) -> Self {
        pairs.retain(|p| p.1 > 0);
        pairs.sort_unstable_by_key(|p| p.0);
        let mut out: SmallVec<[(Var, u32); 4]> = SmallVec::new();
        for (v, e) in pairs {
            match out.last_mut() {
                Some(last) if last.0 == v => last.1 += e,
                _ => out.push((v, e)),
            }
        }
        Mono(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn degree(&self, v: Var) -> u32 {
        match self.0.binary_search_by_key(&v, |p| p.0) {
            Ok(i) => self.0[i].1,
            Err(_) => 0,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|p| p.1).sum()
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        if self.is_one() {
            return o.clone();
        }
        if o.is_one() {
            return self.clone();
        }
        let (a, b) = (&self.0, &o.0);
        let mut out: SmallVec<[(Var, u32); 4]> = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Mono(out)
    }

    /// Exact quotient `self / o`, if `o` divides `self`.
    pub fn div(&self, o: &Mono) -> Option<Mono> {
        let (a, b) = (&self.0, &o.0);
        let mut out: SmallVec<[(Var, u32); 4]> = SmallVec::with_capacity(a.len());
        let mut j = 0;
        for &(v, e) in a.iter() {
            if j < b.len() && b[j].0 < v {
                return None;
            }
            if j < b.len() && b[j].0 == v {
                if b[j].1 > e {
                    return None;
                }
                if e > b[j].1 {
                    out.push((v, e - b[j].1));
                }
                j += 1;
            } else {
                out.push((v, e));
            }
        }
        if j < b.len() {
            return None;
        }
        Some(Mono(out))
    }

    pub fn divides(&self, o: &Mono) -> bool {
        o.div(self).is_some()
    }

    pub fn gcd(&self, o: &Mono) -> Mono {
        let (a, b) = (&self.0, &o.0);
        let mut out: SmallVec<[(Var, u32); 4]> = SmallVec::new();
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1.min(b[j].1)));
                    i += 1;
                    j += 1;
                }
            }
        }
        Mono(out)
    }

    pub fn pow(&self, n: u32) -> Mono {
        Mono(self.0.iter().map(|&(v, e)| (v, e * n)).collect())
    }

    /// Splits off the exponent of `v`: returns `(e, self / v^e)`.
    pub fn split(&self, v: Var) -> (u32, Mono) {
        match self.0.binary_search_by_key(&v, |p| p.0) {
            Ok(i) => {
                let mut rest = self.0.clone();
                let (_, e) = rest.remove(i);
                (e, Mono(rest))
            }
            Err(_) => (0, self.clone()),
        }
    }

    /// Keeps only the vars selected by `keep`.
    pub fn restrict(&self, keep: impl Fn(Var) -> bool) -> Mono {
        Mono(self.0.iter().copied().filter(|p| keep(p.0)).collect())
    }

    pub fn with_degree(&self, v: Var, e: u32) -> Mono {
        let (_, rest) = self.split(v);
        rest.mul(&Mono::var(v, e))
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        let (a, b) = (&self.0, &o.0);
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
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
