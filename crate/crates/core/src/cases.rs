//! Case-specific quantities of the intermediate degeneration.
//!
//! Every `Gamma^1_22` below is the `alpha`-coefficient of `nabla_v v` in the
//! frame `(alpha, v)`, computed as `frame_numerator(v) / (alpha_i v^i)`.

use crate::error::CoreError;
use crate::field::{along, frame_numerator, raise, Vec2};
use crate::invariants::{q, Engine};
use cubic_ode_expr::RatFn;

/// One member of a derived invariant sequence.
#[derive(Clone, Debug)]
pub struct SeqMember {
    /// Conventional name (`I4`) when one exists, else the derivation path.
    pub name: String,
    /// Derivation path such as `A(G(I1))`.
    pub path: String,
    pub depth: usize,
    pub value: RatFn,
}

/// Displayed coefficients of the experimental condition polynomial use these
/// symbols; `J11` has no definition and stays symbolic.
pub const J11_SYMBOL: &str = "J11";

impl Engine {
    fn frame_coefficient(&mut self, name: &str, v: &Vec2) -> Result<RatFn, CoreError> {
        if let Some(c) = self.cached(name) {
            return Ok(c);
        }
        let den = self.alpha_dot(v);
        if den.is_zero() {
            return Err(CoreError::Precondition(format!("{name}: frame is degenerate")));
        }
        let num = frame_numerator(self.ode(), v);
        let br = self.branch()?;
        Ok(self.store(name, num / den, None, Some(br)))
    }

    fn put(&mut self, name: &str, v: RatFn, weight: Option<i32>) -> Result<RatFn, CoreError> {
        let br = self.branch()?;
        Ok(self.store(name, v, weight, Some(br)))
    }

    /// Vector `omega^i = d^ij omega_j`, weight 0.
    pub fn omega_vec(&mut self) -> Result<Vec2, CoreError> {
        Ok(raise(&self.omega_cov()?))
    }

    /// Vector `theta^i = d^ij theta_j`, weight -1.
    pub fn theta_vec(&mut self) -> Result<Vec2, CoreError> {
        Ok(raise(&self.theta_cov()?))
    }

    // ---- case 1 -------------------------------------------------------

    pub fn case1_gamma_hat(&mut self) -> Result<RatFn, CoreError> {
        let g = self.gamma()?;
        self.frame_coefficient("case1.Gamma", &g)
    }

    /// `I1 = M/N^2`, `I2 = Omega^2/N`, `I3 = Gamma^1_22/M`.
    pub fn case1_base(&mut self) -> Result<[RatFn; 3], CoreError> {
        if let (Some(a), Some(b), Some(c)) = (self.cached("case1.I1"), self.cached("case1.I2"), self.cached("case1.I3")) {
            return Ok([a, b, c]);
        }
        let (m, n, om) = (self.m()?, self.n()?, self.omega_cap()?);
        let gh = self.case1_gamma_hat()?;
        let i1 = self.put("case1.I1", &m / (&n * &n), Some(0))?;
        let i2 = self.put("case1.I2", &om * &om / &n, Some(0))?;
        let i3 = self.put("case1.I3", gh / &m, Some(0))?;
        Ok([i1, i2, i3])
    }

    /// `nabla_alpha I / N`.
    pub fn case1_d_alpha(&mut self, i: &RatFn) -> Result<RatFn, CoreError> {
        let (al, n, phi) = (self.alpha(), self.n()?, self.phi()?);
        Ok(along(&al, i, 0, &phi) / n)
    }

    /// `(nabla_gamma I)^2 / N^3`.
    pub fn case1_d_gamma(&mut self, i: &RatFn) -> Result<RatFn, CoreError> {
        let (g, n, phi) = (self.gamma()?, self.n()?, self.phi()?);
        let d = along(&g, i, 0, &phi);
        Ok(&d * &d / (&n * &n * &n))
    }

    /// One level of the case-1 sequence generated from `parents`.
    pub fn case1_children(&mut self, parents: &[SeqMember]) -> Result<Vec<SeqMember>, CoreError> {
        let mut out = Vec::with_capacity(parents.len() * 2);
        for p in parents {
            let a = self.case1_d_alpha(&p.value)?;
            out.push(SeqMember {
                name: case1_name(&format!("A({})", p.path)),
                path: format!("A({})", p.path),
                depth: p.depth + 1,
                value: a,
            });
        }
        for p in parents {
            let g = self.case1_d_gamma(&p.value)?;
            out.push(SeqMember {
                name: case1_name(&format!("G({})", p.path)),
                path: format!("G({})", p.path),
                depth: p.depth + 1,
                value: g,
            });
        }
        Ok(out)
    }

    pub fn case1_roots(&mut self) -> Result<Vec<SeqMember>, CoreError> {
        let base = self.case1_base()?;
        Ok(base
            .into_iter()
            .enumerate()
            .map(|(k, v)| {
                let name = format!("I{}", k + 1);
                SeqMember { name: name.clone(), path: name, depth: 0, value: v }
            })
            .collect())
    }

    /// Named members `I1` .. `I10` of the case-1 sequence.
    pub fn case1_named(&mut self) -> Result<Vec<(String, RatFn)>, CoreError> {
        let [i1, i2, i3] = self.case1_base()?;
        let mut out = vec![("I1".to_string(), i1.clone()), ("I2".to_string(), i2.clone()), ("I3".to_string(), i3.clone())];
        let i4 = self.case1_i4()?;
        out.push(("I4".into(), i4.clone()));
        let i5 = self.case1_d_alpha(&i2)?;
        out.push(("I5".into(), i5));
        let i6 = self.case1_i6()?;
        out.push(("I6".into(), i6));
        out.push(("I7".into(), self.case1_d_gamma(&i1)?));
        out.push(("I8".into(), self.case1_d_gamma(&i2)?));
        out.push(("I9".into(), self.case1_i9()?));
        out.push(("I10".into(), self.case1_i10()?));
        Ok(out)
    }

    pub fn case1_i4(&mut self) -> Result<RatFn, CoreError> {
        if let Some(v) = self.cached("case1.I4") {
            return Ok(v);
        }
        let i1 = self.case1_base()?[0].clone();
        let v = self.case1_d_alpha(&i1)?;
        self.put("case1.I4", v, Some(0))
    }

    pub fn case1_i6(&mut self) -> Result<RatFn, CoreError> {
        if let Some(v) = self.cached("case1.I6") {
            return Ok(v);
        }
        let i3 = self.case1_base()?[2].clone();
        let v = self.case1_d_alpha(&i3)?;
        self.put("case1.I6", v, Some(0))
    }

    pub fn case1_i9(&mut self) -> Result<RatFn, CoreError> {
        if let Some(v) = self.cached("case1.I9") {
            return Ok(v);
        }
        let i3 = self.case1_base()?[2].clone();
        let v = self.case1_d_gamma(&i3)?;
        self.put("case1.I9", v, Some(0))
    }

    /// `I10 = nabla_alpha I4 / N`.
    pub fn case1_i10(&mut self) -> Result<RatFn, CoreError> {
        if let Some(v) = self.cached("case1.I10") {
            return Ok(v);
        }
        let i4 = self.case1_i4()?;
        let v = self.case1_d_alpha(&i4)?;
        self.put("case1.I10", v, Some(0))
    }

    /// `J1 = 5 I1/72`, `J4 = I4/2160`, `J10 = I10/12960`.
    pub fn joint_j(&mut self) -> Result<[RatFn; 3], CoreError> {
        let i1 = self.case1_base()?[0].clone();
        let i4 = self.case1_i4()?;
        let i10 = self.case1_i10()?;
        let j1 = self.put("J1", i1 * q(5, 72), Some(0))?;
        let j4 = self.put("J4", i4 * q(1, 2160), Some(0))?;
        let j10 = self.put("J10", i10 * q(1, 12960), Some(0))?;
        Ok([j1, j4, j10])
    }

    /// The condition polynomial `K0` evaluated on `J1`, `J4`.
    pub fn k0(&mut self) -> Result<RatFn, CoreError> {
        if let Some(v) = self.cached("K0") {
            return Ok(v);
        }
        let [j1, j4, _] = self.joint_j()?;
        let v = k0_poly(&j1, &j4);
        self.put("K0", v, Some(0))
    }

    /// The experimental condition polynomial `Kn`, with `J11` left symbolic
    /// and the token `J_{10}4` read as `J10*J4`.
    pub fn kn(&mut self) -> Result<RatFn, CoreError> {
        if let Some(v) = self.cached("Kn") {
            return Ok(v);
        }
        let [j1, j4, j10] = self.joint_j()?;
        let j11 = RatFn::symbol(J11_SYMBOL);
        let v = kn_poly(&j1, &j4, &j10, &j11);
        self.put("Kn", v, Some(0))
    }

    // ---- case 2 -------------------------------------------------------

    pub fn case2(&mut self) -> Result<Vec<(String, RatFn)>, CoreError> {
        let (n, om, lam, k, phi) = (self.n()?, self.omega_cap()?, self.lambda()?, self.k()?, self.phi()?);
        let eps = self.eps()?;
        let gh = self.frame_coefficient("case2.Gamma", &eps)?;
        let l = &k * &n + &n * q(5, 9) + &lam * &om * 3 + &om * &om * q(7, 9) + &lam * &lam * 2;
        let l = self.put("case2.L", l, Some(2))?;
        let de_l = along(&eps, &l, 2, &phi);
        let de_lam = along(&eps, &lam, 1, &phi);
        let (l2, lam2, om2) = (&l * &l, &lam * &lam, &om * &om);
        let e = &gh - &de_l / &n + &lam * &de_lam * 4 / &n + &om * &de_lam * q(17, 6) / &n + &l2 * q(12, 5) / &n
            - &l * &lam * &om * q(53, 5) / &n
            - &l * &lam2 * q(48, 5) / &n
            - &l * &om2 * q(62, 15) / &n
            - &l * q(8, 3)
            + &lam2 * &lam2 * q(48, 5) / &n
            + &lam2 * &lam * &om * q(106, 5) / &n
            + &lam2 * q(16, 3)
            + &lam2 * &om2 * q(1163, 60) / &n
            + &lam * &om2 * &om * q(137, 18) / &n
            + &lam * &om * q(50, 9)
            + &om2 * q(203, 108)
            + &om2 * &om2 * q(77, 135) / &n
            + &n * q(20, 27);
        let e = self.put("case2.E", e, None)?;
        let i1 = self.put("case2.I1", lam2.powi(6) / (om2.powi(4) * &n * &n), Some(0))?;
        let i2 = self.put("case2.I2", l2.powi(2) / (&n * &n * &om2 * &om2), Some(0))?;
        let i3 = self.put("case2.I3", e.powi(6) * n.powi(4) / om.powi(20), Some(0))?;
        Ok(vec![("I1".into(), i1), ("I2".into(), i2), ("I3".into(), i3)])
    }

    // ---- case 3 -------------------------------------------------------

    pub fn case3(&mut self) -> Result<Vec<(String, RatFn)>, CoreError> {
        let (n, lam, k, phi) = (self.n()?, self.lambda()?, self.k()?, self.phi()?);
        let w = self.omega_vec()?;
        let gh = self.frame_coefficient("case3.Gamma", &w)?;
        let lam2 = &lam * &lam;
        let l = self.put("case3.L", &k + q(5, 9) + &lam2 * 2 / &n, Some(0))?;
        let dw_l = along(&w, &l, 0, &phi);
        let n2 = &n * &n;
        let e = &gh - dw_l / &n + &l * &l * q(9, 5) / &n - &l * 2 / &n - &l * &lam2 * q(12, 5) / &n2
            + &lam2 * q(7, 3) / &n2
            + q(5, 9) / &n
            + &lam2 * &lam2 * q(63, 20) / (&n2 * &n);
        let e = self.put("case3.E", e, None)?;
        let i1 = self.put("case3.I1", l.powi(8) * n.powi(6) / lam.powi(12), Some(0))?;
        let i2 = self.put("case3.I2", e * n.powi(3) / lam.powi(4), Some(0))?;
        Ok(vec![("I1".into(), i1), ("I2".into(), i2)])
    }

    // ---- case 4 -------------------------------------------------------

    /// `L = -(5/9) alpha_i theta^i`.
    pub fn theta_l(&mut self) -> Result<RatFn, CoreError> {
        let t = self.theta_vec()?;
        let v = self.alpha_dot(&t) * q(-5, 9);
        self.put("L3", v, Some(0))
    }

    pub fn case4(&mut self) -> Result<Vec<(String, RatFn)>, CoreError> {
        let (n, th) = (self.n()?, self.theta_cap()?);
        let t = self.theta_vec()?;
        let gh = self.frame_coefficient("case4.Gamma", &t)?;
        let l = self.theta_l()?;
        let s = &th + q(5, 9) / &n;
        let e = &gh + &n * q(27, 5) * s.powi(3) - s.powi(2) * q(3, 4);
        let e = self.put("case4.E", e, None)?;
        let i1 = self.put("case4.I1", e.powi(6) * n.powi(12) / l.powi(20), Some(0))?;
        Ok(vec![("I1".into(), i1)])
    }

    // ---- case 6 -------------------------------------------------------

    pub fn case6(&mut self) -> Result<Vec<(String, RatFn)>, CoreError> {
        let (om, k, phi) = (self.omega_cap()?, self.k()?, self.phi()?);
        let w = self.omega_vec()?;
        let gh = self.frame_coefficient("case6.Gamma", &w)?;
        let k2 = &k * &k;
        let l = along(&w, &k, 0, &phi) - &k2 * q(21, 25) - &k;
        let l = self.put("case6.I1", l, Some(0))?;
        let i2 = &om * &om * &gh - along(&w, &l, 0, &phi) - &k2 * &k * q(72, 625) + &k2 * q(63, 50)
            + &k * &l * q(12, 25)
            - &k
            - &l;
        let i2 = self.put("case6.I2", i2, Some(0))?;
        Ok(vec![("I1".into(), l), ("I2".into(), i2)])
    }

    // ---- case 7 -------------------------------------------------------

    /// `L = Gamma^1_22 - Theta^2/2`, weight -4.
    pub fn case7_l(&mut self) -> Result<RatFn, CoreError> {
        if let Some(v) = self.cached("case7.L") {
            return Ok(v);
        }
        let th = self.theta_cap()?;
        let t = self.theta_vec()?;
        let gh = self.frame_coefficient("case7.Gamma", &t)?;
        self.put("case7.L", gh - &th * &th * q(1, 2), Some(-4))
    }

    /// `L1 = nabla_theta L`, weight -5.
    pub fn case7_l1(&mut self) -> Result<RatFn, CoreError> {
        if let Some(v) = self.cached("case7.L1") {
            return Ok(v);
        }
        let (l, t, phi) = (self.case7_l()?, self.theta_vec()?, self.phi()?);
        self.put("case7.L1", along(&t, &l, -4, &phi), Some(-5))
    }

    /// `W = nabla_theta L1`, `V = nabla_alpha L1`.
    pub fn case7_wv(&mut self) -> Result<[RatFn; 2], CoreError> {
        let (l1, t, phi, al) = (self.case7_l1()?, self.theta_vec()?, self.phi()?, self.alpha());
        let w = self.put("W", along(&t, &l1, -5, &phi), Some(-6))?;
        let v = self.put("V", along(&al, &l1, -5, &phi), Some(-3))?;
        Ok([w, v])
    }

    /// `I1 = L1^4/L^5`, `I2 = Theta^2/L`.
    pub fn case7(&mut self) -> Result<Vec<(String, RatFn)>, CoreError> {
        let (l, l1, th) = (self.case7_l()?, self.case7_l1()?, self.theta_cap()?);
        let i1 = self.put("case7.I1", l1.powi(4) / l.powi(5), Some(0))?;
        let i2 = self.put("case7.I2", &th * &th / &l, Some(0))?;
        Ok(vec![("I1".into(), i1), ("I2".into(), i2)])
    }
}

fn case1_name(path: &str) -> String {
    match path {
        "A(I1)" => "I4",
        "A(I2)" => "I5",
        "A(I3)" => "I6",
        "G(I1)" => "I7",
        "G(I2)" => "I8",
        "G(I3)" => "I9",
        "A(A(I1))" => "I10",
        _ => return path.to_string(),
    }
    .to_string()
}

fn c(n: i64) -> RatFn {
    RatFn::from_int(n)
}

fn p10(k: u32) -> RatFn {
    RatFn::from_int(10i64.pow(k))
}

fn p2(k: u32) -> RatFn {
    RatFn::from_int(1i64 << k)
}

fn p3(k: u32) -> RatFn {
    RatFn::from_int(3i64.pow(k))
}

pub fn k0_poly(j1: &RatFn, j4: &RatFn) -> RatFn {
    j1.powi(4) * 4608 - j1.powi(3) * 3248 + j1.powi(2) * 808 + j4 * j1.powi(2) * 48000 - j4 * j1 * 16500 - j1 * 83
        + j4 * 1125
        + j4.powi(2) * 125000
        + 3
}

/// Literal transcription, including the bare constant `31879206254`.
pub fn kn_poly(j1: &RatFn, j4: &RatFn, j10: &RatFn, j11: &RatFn) -> RatFn {
    let (j4_2, j4_3) = (j4.powi(2), j4.powi(3));
    let j10_2 = j10.powi(2);
    let t9 = p2(22) * p3(9) * j1.powi(9);
    let t8 = -(p2(18) * p3(4) * 7229 * j1.powi(8));
    let t7 = p2(14) * p3(2) * (c(20412) * p10(3) * j4 + 795377) * j1.powi(7);
    let t6 = p2(10) * 15 * (j10 * 11664000 - j4 * 293875200 - 3170041) * j1.powi(6);
    let t5 = p2(9) * 15 * (c(47628) * p10(5) * &j4_2 + j4 * 347502500 - c(33816) * p10(3) * j11 + 1574799) * j1.powi(5);
    let t4 = p2(8)
        * (j10 * 550148750 + c(1701) * p10(7) * j10 * j4 - c(15275925) * p10(4) * &j4_2 - 31879206254i64 - 7217838)
        * j1.powi(4);
    let t3 = p2(5)
        * (c(5312667) + c(437746) * p10(4) * j4 + c(405) * p10(7) * &j10_2 + c(46305) * p10(8) * &j4_3
            + c(479194) * p10(6) * &j4_2
            - j10 * 1168733750
            - c(129705) * p10(6) * j10 * j4)
        * j1.powi(3);
    let t2 = p2(2)
        * (c(-2157057) - j4 * 337746700 + c(12948575) * p10(2) * j10 + c(6615) * p10(9) * j10 * &j4_2
            + c(33184) * p10(7) * j11 * j4
            - c(697457) * p10(6) * &j4_2
            - c(219765) * p10(8) * &j4_3
            - c(23075) * p10(6) * &j10_2)
        * j1.powi(2);
    let t1 = p2(2)
        * 5
        * (c(9675) * p10(5) * &j10_2 - j10 * 17852625 + j4 * 33823650 - c(847425) * p10(4) * j10 * j4
            - c(615125) * p10(6) * j10 * &j4_2
            + c(8080625) * p10(5) * &j4_3
            + c(11864525) * p10(3) * &j4_2
            + 9261
            + c(7875) * p10(7) * &j10_2 * j4)
        * j1;
    let t0 = c(25)
        * (j10 * 15435 - j4 * 21609 - &j4_2 * 12027400 - c(16033) * p10(5) * &j4_3 + c(11606) * p10(3) * j10 * j4
            + c(5) * p10(7) * j10_2.clone() * j10
            + c(343) * p10(8) * j4.powi(4)
            + c(20875) * p10(5) * j10 * &j4_2
            - c(58) * p10(7) * &j10_2 * j4
            - c(175) * p10(4) * &j10_2);
    t9 + t8 + t7 + t6 + t5 + t4 + t3 + t2 + t1 + t0
}
