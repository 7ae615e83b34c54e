//! Global table of kernels: the indeterminates of every polynomial.
//!
//! A kernel is either a symbol or an elementary function applied to a
//! canonical rational function. `x` and `y` are always kernels 0 and 1.
//! Ranks order kernels by name so that canonical forms and printed output do
//! not depend on the order in which kernels were interned.

use crate::mono::Var;
use crate::poly::Poly;
use crate::ratfn::RatFn;
use once_cell::sync::Lazy;
use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, RwLock};

/// Universal root index: `Root(b)` stands for `b^(1/ROOT_INDEX)`.
pub const ROOT_INDEX: u32 = 720720;

pub const X: Var = 0;
pub const Y: Var = 1;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Kind {
    Symbol(String),
    Exp(RatFn),
    Ln(RatFn),
    Sin(RatFn),
    Cos(RatFn),
    Root(Poly),
}

#[derive(Debug)]
pub struct Entry {
    pub kind: Kind,
    pub name: String,
    /// Symbol kernels this kernel depends on.
    pub syms: BTreeSet<Var>,
    /// For `Cos(u)`, the kernel `Sin(u)`.
    pub partner: Option<Var>,
}

struct Table {
    entries: Vec<Arc<Entry>>,
    index: HashMap<Kind, Var>,
}

static TABLE: Lazy<RwLock<Table>> = Lazy::new(|| {
    let mut t = Table { entries: Vec::new(), index: HashMap::new() };
    for name in ["x", "y"] {
        let v = t.entries.len() as Var;
        let kind = Kind::Symbol(name.to_string());
        t.entries.push(Arc::new(Entry {
            kind: kind.clone(),
            name: name.to_string(),
            syms: BTreeSet::from([v]),
            partner: None,
        }));
        t.index.insert(kind, v);
    }
    RwLock::new(t)
});

static RANKS: Lazy<RwLock<Arc<Vec<u32>>>> = Lazy::new(|| RwLock::new(Arc::new(compute_ranks(&TABLE.read().unwrap().entries))));

static DERIVS: Lazy<RwLock<HashMap<(Var, Var), RatFn>>> = Lazy::new(|| RwLock::new(HashMap::new()));

fn compute_ranks(entries: &[Arc<Entry>]) -> Vec<u32> {
    let mut idx: Vec<usize> = (0..entries.len()).collect();
    // x and y first, then by name
    idx.sort_by(|&a, &b| {
        let ka = (a > 1, &entries[a].name);
        let kb = (b > 1, &entries[b].name);
        ka.cmp(&kb).then(a.cmp(&b))
    });
    let mut ranks = vec![0; entries.len()];
    for (r, i) in idx.into_iter().enumerate() {
        ranks[i] = r as u32;
    }
    ranks
}

pub fn intern(kind: Kind) -> Var {
    if let Some(&v) = TABLE.read().unwrap().index.get(&kind) {
        return v;
    }
    let partner = match &kind {
        Kind::Cos(u) => Some(intern(Kind::Sin(u.clone()))),
        _ => None,
    };
    let name = kind_name(&kind);
    let mut syms = BTreeSet::new();
    match &kind {
        Kind::Symbol(_) => {}
        Kind::Exp(u) | Kind::Ln(u) | Kind::Sin(u) | Kind::Cos(u) => {
            for v in u.kernels() {
                syms.extend(entry(v).syms.iter().copied());
            }
        }
        Kind::Root(b) => {
            for v in b.vars() {
                syms.extend(entry(v).syms.iter().copied());
            }
        }
    }
    Lazy::force(&RANKS);
    let mut t = TABLE.write().unwrap();
    if let Some(&v) = t.index.get(&kind) {
        return v;
    }
    let v = t.entries.len() as Var;
    if let Kind::Symbol(_) = kind {
        syms.insert(v);
    }
    t.entries.push(Arc::new(Entry { kind: kind.clone(), name, syms, partner }));
    t.index.insert(kind, v);
    let ranks = compute_ranks(&t.entries);
    *RANKS.write().unwrap() = Arc::new(ranks);
    v
}

pub fn symbol(name: &str) -> Var {
    match name {
        "x" => X,
        "y" => Y,
        _ => intern(Kind::Symbol(name.to_string())),
    }
}

/// Looks a symbol up without creating it.
pub fn find_symbol(name: &str) -> Option<Var> {
    TABLE.read().unwrap().index.get(&Kind::Symbol(name.to_string())).copied()
}

pub fn entry(v: Var) -> Arc<Entry> {
    TABLE.read().unwrap().entries[v as usize].clone()
}

pub fn name(v: Var) -> String {
    entry(v).name.clone()
}

pub fn is_symbol(v: Var) -> bool {
    matches!(entry(v).kind, Kind::Symbol(_))
}

pub fn depends_on(k: Var, s: Var) -> bool {
    entry(k).syms.contains(&s)
}

pub fn ranks() -> Arc<Vec<u32>> {
    let r = RANKS.read().unwrap().clone();
    let n = TABLE.read().unwrap().entries.len();
    if r.len() == n {
        return r;
    }
    // another thread is between inserting and publishing ranks
    let t = TABLE.read().unwrap();
    Arc::new(compute_ranks(&t.entries))
}

fn kind_name(kind: &Kind) -> String {
    match kind {
        Kind::Symbol(s) => s.clone(),
        Kind::Exp(u) => format!("exp({})", u.to_expr()),
        Kind::Ln(u) => format!("ln({})", u.to_expr()),
        Kind::Sin(u) => format!("sin({})", u.to_expr()),
        Kind::Cos(u) => format!("cos({})", u.to_expr()),
        Kind::Root(b) => format!("root({})", RatFn::from_poly(b.clone()).to_expr()),
    }
}

/// Partial derivative of kernel `k` with respect to the symbol `s`.
pub fn derivative(k: Var, s: Var) -> RatFn {
    if k == s {
        return RatFn::one();
    }
    if !depends_on(k, s) {
        return RatFn::zero();
    }
    if let Some(d) = DERIVS.read().unwrap().get(&(k, s)) {
        return d.clone();
    }
    let e = entry(k);
    let d = match &e.kind {
        Kind::Symbol(_) => RatFn::zero(),
        Kind::Exp(u) => RatFn::var(k).mul(&u.diff(s)),
        Kind::Ln(u) => u.diff(s).div(u),
        Kind::Sin(u) => crate::ratfn::cos(u).mul(&u.diff(s)),
        Kind::Cos(u) => crate::ratfn::sin(u).mul(&u.diff(s)).neg(),
        Kind::Root(b) => {
            let bb = RatFn::from_poly(b.clone());
            RatFn::var(k)
                .mul(&bb.diff(s))
                .div(&bb.mul(&RatFn::from_int(ROOT_INDEX as i64)))
        }
    };
    DERIVS.write().unwrap().insert((k, s), d.clone());
    d
}
