//! Pseudoinvariants of the intermediate degeneration and their cache.
//!
//! Where two formulas are given, one valid for `A != 0` and one for `B != 0`,
//! the `A` branch is preferred. Every slot remembers the branch that produced
//! it and, once tested, its zero verdict.

use crate::error::CoreError;
use crate::field::{contract, cross, grad, raise, Connection, Vec2};
use crate::ode::OdeCubic;
use cubic_ode_expr::kernel::{X, Y};
use cubic_ode_expr::{decide_zero, ProbeConfig, RatFn, ZeroVerdict};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Branch {
    A,
    B,
}

impl Branch {
    pub fn label(self) -> &'static str {
        match self {
            Branch::A => "A!=0",
            Branch::B => "B!=0",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Slot {
    pub value: RatFn,
    pub weight: Option<i32>,
    pub branch: Option<Branch>,
    pub verdict: Option<ZeroVerdict>,
}

pub(crate) fn d(f: &RatFn, i: u32, j: u32) -> RatFn {
    f.diff_n(X, i).diff_n(Y, j)
}

pub(crate) fn q(n: i64, m: i64) -> RatFn {
    RatFn::ratio(n, m)
}

/// Lazily computed named quantities of one equation.
pub struct Engine {
    ode: OdeCubic,
    pub cfg: ProbeConfig,
    slots: BTreeMap<String, Slot>,
    order: Vec<String>,
    branch: Option<Option<Branch>>,
}

impl Engine {
    pub fn new(ode: &OdeCubic, cfg: ProbeConfig) -> Self {
        Engine { ode: ode.clone(), cfg, slots: BTreeMap::new(), order: Vec::new(), branch: None }
    }

    /// Uses the given branch's formulas without testing `A` or `B`.
    pub fn force_branch(&mut self, branch: Branch) {
        self.branch = Some(Some(branch));
    }

    pub fn ode(&self) -> &OdeCubic {
        &self.ode
    }

    /// Slots in the order they were computed.
    pub fn slots(&self) -> impl Iterator<Item = (&str, &Slot)> {
        self.order.iter().map(move |n| (n.as_str(), &self.slots[n]))
    }

    pub fn slot(&self, name: &str) -> Option<&Slot> {
        self.slots.get(name)
    }

    pub(crate) fn cached(&self, name: &str) -> Option<RatFn> {
        self.slots.get(name).map(|s| s.value.clone())
    }

    pub(crate) fn store(&mut self, name: &str, value: RatFn, weight: Option<i32>, branch: Option<Branch>) -> RatFn {
        if !self.slots.contains_key(name) {
            self.order.push(name.to_string());
        }
        self.slots.insert(name.to_string(), Slot { value: value.clone(), weight, branch, verdict: None });
        value
    }

    /// Zero test of an arbitrary value under the equation's assumptions.
    pub fn test(&self, value: &RatFn) -> ZeroVerdict {
        decide_zero(value, &self.ode.assume, &self.cfg)
    }

    /// Zero test of a stored slot; the verdict is cached on the slot.
    pub fn verdict(&mut self, name: &str) -> ZeroVerdict {
        let slot = self.slots.get(name).expect("slot computed before its verdict");
        if let Some(v) = &slot.verdict {
            return v.clone();
        }
        let v = self.test(&slot.value);
        self.slots.get_mut(name).unwrap().verdict = Some(v.clone());
        v
    }

    fn memo(&mut self, name: &str, weight: Option<i32>, branch: Option<Branch>, f: impl FnOnce(&mut Self) -> RatFn) -> RatFn {
        if let Some(v) = self.cached(name) {
            return v;
        }
        let v = f(self);
        self.store(name, v, weight, branch)
    }

    fn memo_try(
        &mut self,
        name: &str,
        weight: Option<i32>,
        f: impl FnOnce(&mut Self, Branch) -> Result<RatFn, CoreError>,
    ) -> Result<RatFn, CoreError> {
        if let Some(v) = self.cached(name) {
            return Ok(v);
        }
        let br = self.branch()?;
        let v = f(self, br)?;
        Ok(self.store(name, v, weight, Some(br)))
    }

    pub fn a(&mut self) -> RatFn {
        self.memo("A", None, None, |e| {
            let (p, qq, r, s) = (&e.ode.p, &e.ode.q, &e.ode.r, &e.ode.s);
            d(p, 0, 2) - d(qq, 1, 1) * 2 + d(r, 2, 0) + p * d(s, 1, 0) * 2 + s * d(p, 1, 0)
                - p * d(r, 0, 1) * 3
                - r * d(p, 0, 1) * 3
                - qq * d(r, 1, 0) * 3
                + qq * d(qq, 0, 1) * 6
        })
    }

    pub fn b(&mut self) -> RatFn {
        self.memo("B", None, None, |e| {
            let (p, qq, r, s) = (&e.ode.p, &e.ode.q, &e.ode.r, &e.ode.s);
            d(s, 2, 0) - d(r, 1, 1) * 2 + d(qq, 0, 2) - s * d(p, 0, 1) * 2 - p * d(s, 0, 1)
                + s * d(qq, 1, 0) * 3
                + qq * d(s, 1, 0) * 3
                + r * d(qq, 0, 1) * 3
                - r * d(r, 1, 0) * 6
        })
    }

    /// Vector `alpha^i = (B, -A)`, weight 2.
    pub fn alpha(&mut self) -> Vec2 {
        [self.b(), -self.a()]
    }

    /// Covector `alpha_i = (A, B)`, weight 1.
    pub fn alpha_cov(&mut self) -> Vec2 {
        [self.a(), self.b()]
    }

    pub fn g(&mut self) -> RatFn {
        let (a, b) = (self.a(), self.b());
        self.memo("G", None, None, |e| {
            let (r, s, qq) = (&e.ode.r, &e.ode.s, &e.ode.q);
            -(&b * d(&b, 1, 0)) - &a * d(&b, 0, 1) * 3 + &b * d(&a, 0, 1) * 4 + s * &a * &a * 3 - r * &b * &a * 6
                + qq * &b * &b * 3
        })
    }

    pub fn h(&mut self) -> RatFn {
        let (a, b) = (self.a(), self.b());
        self.memo("H", None, None, |e| {
            let (p, qq, r) = (&e.ode.p, &e.ode.q, &e.ode.r);
            -(&a * d(&a, 0, 1)) - &b * d(&a, 1, 0) * 3 + &a * d(&b, 1, 0) * 4 - p * &b * &b * 3 + qq * &a * &b * 6
                - r * &a * &a * 3
        })
    }

    /// Vector `beta^i = (G, H)`, weight 4.
    pub fn beta(&mut self) -> Vec2 {
        [self.g(), self.h()]
    }

    /// `F^5 = (AG + BH)/3`.
    pub fn f5(&mut self) -> RatFn {
        let (a, b, g, h) = (self.a(), self.b(), self.g(), self.h());
        self.memo("F5", Some(5), None, |_| (&a * &g + &b * &h) * q(1, 3))
    }

    /// Branch selection: `A` if `A != 0`, else `B` if `B != 0`.
    pub fn branch(&mut self) -> Result<Branch, CoreError> {
        if let Some(b) = self.branch {
            return b.ok_or_else(|| CoreError::Precondition("A = 0 and B = 0 (maximal degeneration)".into()));
        }
        self.a();
        self.b();
        let va = self.verdict("A");
        let chosen = match va {
            ZeroVerdict::NonZero { .. } => Some(Branch::A),
            ZeroVerdict::Zero | ZeroVerdict::Unknown(_) => match self.verdict("B") {
                ZeroVerdict::NonZero { .. } => Some(Branch::B),
                ZeroVerdict::Zero if va.is_zero() => None,
                ZeroVerdict::Zero => {
                    return Err(CoreError::Undecided { predicate: "A".into(), diagnostic: va.to_string() });
                }
                ZeroVerdict::Unknown(diag) => {
                    return Err(CoreError::Undecided { predicate: "B".into(), diagnostic: diag });
                }
            },
        };
        self.branch = Some(chosen);
        chosen.ok_or_else(|| CoreError::Precondition("A = 0 and B = 0 (maximal degeneration)".into()))
    }

    pub fn phi(&mut self) -> Result<Vec2, CoreError> {
        let p1 = self.memo_try("phi1", None, |e, br| Ok(e.phi_formula(br)[0].clone()))?;
        let p2 = self.memo_try("phi2", None, |e, br| Ok(e.phi_formula(br)[1].clone()))?;
        Ok([p1, p2])
    }

    fn phi_formula(&mut self, br: Branch) -> Vec2 {
        let (a, b) = (self.a(), self.b());
        let (p, qq, r, s) = (&self.ode.p, &self.ode.q, &self.ode.r, &self.ode.s);
        match br {
            Branch::A => {
                let k = &b * p + d(&a, 1, 0);
                let p1 = -(&k * q(3, 5) / &a) + qq * q(3, 5);
                let p2 = &b * &k * q(3, 5) / (&a * &a) - (d(&b, 1, 0) + d(&a, 0, 1) + &b * qq * 3) * q(3, 5) / &a
                    + r * q(6, 5);
                [p1, p2]
            }
            Branch::B => {
                let k = &a * s - d(&b, 0, 1);
                let p1 = -(&a * &k * q(3, 5) / (&b * &b)) - (d(&a, 0, 1) + d(&b, 1, 0) - &a * r * 3) * q(3, 5) / &b
                    - qq * q(6, 5);
                let p2 = &k * q(3, 5) / &b - r * q(3, 5);
                [p1, p2]
            }
        }
    }

    pub fn connection(&mut self) -> Result<Connection, CoreError> {
        let phi = self.phi()?;
        Ok(Connection::new(&self.ode, phi))
    }

    /// `Omega`, weight 1.
    pub fn omega_cap(&mut self) -> Result<RatFn, CoreError> {
        self.memo_try("Omega", Some(1), |e, br| {
            let (a, b) = (e.a(), e.b());
            let (p, qq, r, s) = (&e.ode.p, &e.ode.q, &e.ode.r, &e.ode.s);
            Ok(match br {
                Branch::A => {
                    let ax = d(&a, 1, 0);
                    let bx = d(&b, 1, 0);
                    let a2 = &a * &a;
                    &b * &ax * (&b * p + &ax) * 2 / (&a2 * &a) - (&bx * 2 + &b * qq * 3) * &ax / &a2
                        + (d(&a, 0, 1) - &bx * 2) * &b * p / &a2
                        - (&b * d(&a, 2, 0) + &b * &b * d(p, 1, 0)) / &a2
                        + d(&b, 2, 0) / &a
                        + (&bx * qq * 3 + &b * d(qq, 1, 0) * 3 - d(&b, 0, 1) * p - &b * d(p, 0, 1)) / &a
                        + d(qq, 0, 1)
                        - d(r, 1, 0) * 2
                }
                Branch::B => {
                    let by = d(&b, 0, 1);
                    let ay = d(&a, 0, 1);
                    let b2 = &b * &b;
                    &a * &by * (&a * s - &by) * 2 / (&b2 * &b) + (&ay * 2 - &a * r * 3) * &by / &b2
                        + (d(&b, 1, 0) - &ay * 2) * &a * s / &b2
                        + (&a * d(&b, 0, 2) - &a * &a * d(s, 0, 1)) / &b2
                        - d(&a, 0, 2) / &b
                        + (&ay * r * 3 + &a * d(r, 0, 1) * 3 - d(&a, 1, 0) * s - &a * d(s, 1, 0)) / &b
                        + d(r, 1, 0)
                        - d(qq, 0, 1) * 2
                }
            })
        })
    }

    /// `N` with `beta = 3 N alpha`, weight 2.
    pub fn n(&mut self) -> Result<RatFn, CoreError> {
        self.memo_try("N", Some(2), |e, br| {
            Ok(match br {
                Branch::A => -(e.h() / (e.a() * 3)),
                Branch::B => e.g() / (e.b() * 3),
            })
        })
    }

    /// `M = -alpha_i xi^i`, weight 4.
    pub fn m(&mut self) -> Result<RatFn, CoreError> {
        self.memo_try("M", Some(4), |e, br| {
            let (a, b, n) = (e.a(), e.b(), e.n()?);
            let (p, qq, r, s) = (&e.ode.p, &e.ode.q, &e.ode.r, &e.ode.s);
            let (nx, ny) = (d(&n, 1, 0), d(&n, 0, 1));
            let (ay, bx) = (d(&a, 0, 1), d(&b, 1, 0));
            Ok(match br {
                Branch::A => {
                    -(&b * &n * (&b * p + d(&a, 1, 0)) * q(12, 5) / &a) + &b * &nx + &b * &n * qq * q(24, 5)
                        + &n * &bx * q(6, 5)
                        + &n * &ay * q(6, 5)
                        - &a * &ny
                        - &a * &n * r * q(12, 5)
                }
                Branch::B => {
                    -(&a * &n * (&a * s - d(&b, 0, 1)) * q(12, 5) / &b) - &a * &ny + &a * &n * r * q(24, 5)
                        - &n * &ay * q(6, 5)
                        - &n * &bx * q(6, 5)
                        + &b * &nx
                        - &b * &n * qq * q(12, 5)
                }
            })
        })
    }

    /// Vector `gamma = -xi - 2 Omega alpha`, weight 3.
    pub fn gamma(&mut self) -> Result<Vec2, CoreError> {
        let g1 = self.memo_try("gamma1", Some(3), |e, br| Ok(e.gamma_formula(br)?[0].clone()))?;
        let g2 = self.memo_try("gamma2", Some(3), |e, br| Ok(e.gamma_formula(br)?[1].clone()))?;
        Ok([g1, g2])
    }

    fn gamma_formula(&mut self, br: Branch) -> Result<Vec2, CoreError> {
        let (a, b, n, om) = (self.a(), self.b(), self.n()?, self.omega_cap()?);
        let (p, qq, r, s) = (&self.ode.p, &self.ode.q, &self.ode.r, &self.ode.s);
        let (nx, ny) = (d(&n, 1, 0), d(&n, 0, 1));
        let (ay, bx) = (d(&a, 0, 1), d(&b, 1, 0));
        Ok(match br {
            Branch::A => {
                let k = &b * p + d(&a, 1, 0);
                let g1 = -(&b * &n * &k * q(6, 5) / (&a * &a)) + &n * &b * qq * q(18, 5) / &a
                    + &n * (&bx + &ay) * q(6, 5) / &a
                    - &ny
                    - &n * r * q(12, 5)
                    - &om * &b * 2;
                let g2 = -(&n * &k * q(6, 5) / &a) + &nx + &n * qq * q(6, 5) + &om * &a * 2;
                [g1, g2]
            }
            Branch::B => {
                let k = &a * s - d(&b, 0, 1);
                let g1 = -(&n * &k * q(6, 5) / &b) - &ny + &n * r * q(6, 5) - &om * &b * 2;
                let g2 = -(&a * &n * &k * q(6, 5) / (&b * &b)) + &n * &a * r * q(18, 5) / &b
                    - &n * (&ay + &bx) * q(6, 5) / &b
                    + &nx
                    - &n * qq * q(12, 5)
                    + &om * &a * 2;
                [g1, g2]
            }
        })
    }

    /// `Lambda` with `gamma = Lambda alpha`, weight 1.
    pub fn lambda(&mut self) -> Result<RatFn, CoreError> {
        self.memo_try("Lambda", Some(1), |e, br| {
            let (a, b, n, om) = (e.a(), e.b(), e.n()?, e.omega_cap()?);
            let (p, qq, r, s) = (&e.ode.p, &e.ode.q, &e.ode.r, &e.ode.s);
            Ok(match br {
                Branch::A => {
                    &n * (&b * p + d(&a, 1, 0)) * q(6, 5) / (&a * &a) - d(&n, 1, 0) / &a - &n * qq * q(6, 5) / &a
                        - &om * 2
                }
                Branch::B => {
                    -(&n * (&a * s - d(&b, 0, 1)) * q(6, 5) / (&b * &b)) - d(&n, 0, 1) / &b + &n * r * q(6, 5) / &b
                        - &om * 2
                }
            })
        })
    }

    /// Covector `omega`, weight -1.
    pub fn omega_cov(&mut self) -> Result<Vec2, CoreError> {
        let w1 = self.memo_try("omega1", Some(-1), |e, br| Ok(e.omega_formula(br)?[0].clone()))?;
        let w2 = self.memo_try("omega2", Some(-1), |e, br| Ok(e.omega_formula(br)?[1].clone()))?;
        Ok([w1, w2])
    }

    fn omega_formula(&mut self, br: Branch) -> Result<Vec2, CoreError> {
        let (a, b, lam, om) = (self.a(), self.b(), self.lambda()?, self.omega_cap()?);
        let (p, qq, r, s) = (&self.ode.p, &self.ode.q, &self.ode.r, &self.ode.s);
        Ok(match br {
            Branch::A => {
                let (ax, ay, axx, bx) = (d(&a, 1, 0), d(&a, 0, 1), d(&a, 2, 0), d(&b, 1, 0));
                let (px, py, qx) = (d(p, 1, 0), d(p, 0, 1), d(qq, 1, 0));
                let a2 = &a * &a;
                let a3 = &a2 * &a;
                let w1 = p * r * q(12, 5) / &a - qq * qq * q(54, 25) / &a - &py / &a + &qx * q(6, 5) / &a
                    - (p * &ay + &b * &px + &axx) / (&a2 * 5)
                    - &bx * p * q(2, 5) / &a2
                    + (qq * &ax * 3 - p * &b * qq * 12) / (&a2 * 25)
                    + (&b * &b * p * p * 6 + &ax * &b * p * 12 + &ax * &ax * 6) / (&a3 * 25);
                let w2 = (&lam * 6 + &om * 3) / (&a * 5)
                    + (-(&b * &py * 5) + &b * &qx * 6 + r * &b * p * 12) / (&a2 * 5)
                    - &b * qq * qq * q(54, 25) / &a2
                    - &b * &b * p * qq * q(12, 25) / &a3
                    + &b * qq * &ax * q(3, 25) / &a3
                    - (&b * &bx * p * 2 + &b * &ay * p + &b * &b * &px + &b * &axx) / (&a3 * 5)
                    + (&b * &ax * &ax * 6 + &b * &b * &b * p * p * 6 + &b * &b * &ax * p * 12) / (&a3 * &a * 25);
                [w1, w2]
            }
            Branch::B => {
                let (ay, by, byy, bx) = (d(&a, 0, 1), d(&b, 0, 1), d(&b, 0, 2), d(&b, 1, 0));
                let (sx, sy, ry) = (d(s, 1, 0), d(s, 0, 1), d(r, 0, 1));
                let b2 = &b * &b;
                let b3 = &b2 * &b;
                let w1 = -((&lam * 6 + &om * 3) / (&b * 5))
                    + (&a * &sx * 5 - &a * &ry * 6 + qq * &a * s * 12) / (&b2 * 5)
                    - &a * r * r * q(54, 25) / &b2
                    - &a * &a * s * r * q(12, 25) / &b3
                    - &a * r * &by * q(3, 25) / &b3
                    + (&a * &ay * s * 2 + &a * &bx * s + &a * &a * &sy - &a * &byy) / (&b3 * 5)
                    + (&a * &by * &by * 6 + &a * &a * &a * s * s * 6 - &a * &a * &by * s * 12) / (&b3 * &b * 25);
                let w2 = s * qq * q(12, 5) / &b - r * r * q(54, 25) / &b + &sx / &b - &ry * q(6, 5) / &b
                    + (s * &bx + &a * &sy - &byy) / (&b2 * 5)
                    + &ay * s * q(2, 5) / &b2
                    - (r * &by * 3 + s * &a * r * 12) / (&b2 * 25)
                    + (&a * &a * s * s * 6 - &by * &a * s * 12 + &by * &by * 6) / (&b3 * 25);
                [w1, w2]
            }
        })
    }

    /// `K` with `N omega + nabla Lambda + nabla Omega / 3 = K alpha`, weight 0.
    pub fn k(&mut self) -> Result<RatFn, CoreError> {
        self.memo_try("K", Some(0), |e, br| {
            let (lam, om, n, w, phi) = (e.lambda()?, e.omega_cap()?, e.n()?, e.omega_cov()?, e.phi()?);
            let i = if br == Branch::A { 0 } else { 1 };
            let den = if br == Branch::A { e.a() } else { e.b() };
            let lam_d = if i == 0 { d(&lam, 1, 0) } else { d(&lam, 0, 1) };
            let om_d = if i == 0 { d(&om, 1, 0) } else { d(&om, 0, 1) };
            Ok((lam_d + &lam * &phi[i]) / &den + (om_d + &om * &phi[i]) / (&den * 3) + &n * &w[i] / &den)
        })
    }

    /// Vector `epsilon^i = d^ij (N omega_j + nabla_j Lambda)`, weight 2.
    pub fn eps(&mut self) -> Result<Vec2, CoreError> {
        let (n, w, lam, phi) = (self.n()?, self.omega_cov()?, self.lambda()?, self.phi()?);
        let g = grad(&lam, 1, &phi);
        let cov = [&n * &w[0] + &g[0], &n * &w[1] + &g[1]];
        let v = raise(&cov);
        let br = self.branch()?;
        self.store("eps1", v[0].clone(), Some(2), Some(br));
        self.store("eps2", v[1].clone(), Some(2), Some(br));
        Ok(v)
    }

    /// `Theta` with `omega = Theta alpha` (raised), weight -2.
    pub fn theta_cap(&mut self) -> Result<RatFn, CoreError> {
        self.memo_try("Theta", Some(-2), |e, br| {
            let w = e.omega_cov()?;
            Ok(match br {
                Branch::A => &w[0] / e.a(),
                Branch::B => &w[1] / e.b(),
            })
        })
    }

    /// Covector `theta = nabla Theta`, weight -2.
    pub fn theta_cov(&mut self) -> Result<Vec2, CoreError> {
        let t = self.theta_cap()?;
        let phi = self.phi()?;
        let g = grad(&t, -2, &phi);
        let br = self.branch()?;
        self.store("theta_1", g[0].clone(), Some(-2), Some(br));
        self.store("theta_2", g[1].clone(), Some(-2), Some(br));
        Ok(g)
    }

    /// `xi^i = d^ij nabla_j N`, weight 3.
    pub fn xi(&mut self) -> Result<Vec2, CoreError> {
        let (n, phi) = (self.n()?, self.phi()?);
        Ok(raise(&grad(&n, 2, &phi)))
    }

    /// `Z = d_ij eta^i xi^j` with `eta^i = d^ij nabla_j M`, weight 7.
    pub fn z(&mut self) -> Result<RatFn, CoreError> {
        if let Some(v) = self.cached("Z") {
            return Ok(v);
        }
        let (m, phi) = (self.m()?, self.phi()?);
        let eta = raise(&grad(&m, 4, &phi));
        let xi = self.xi()?;
        let br = self.branch()?;
        Ok(self.store("Z", cross(&eta, &xi), Some(7), Some(br)))
    }

    /// `alpha_i v^i`, the denominator of frame coefficients along `alpha`.
    pub fn alpha_dot(&mut self, v: &Vec2) -> RatFn {
        let ac = self.alpha_cov();
        contract(&ac, v)
    }
}
