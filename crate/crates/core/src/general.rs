//! Invariants of the general case, `F^5 != 0`.
//!
//! `F` is never extracted. With `f = F^5`, a quantity `r F^e` is stored as
//! the pair `(r, e)` and `phi = -(1/5) d ln f`, so that `F` (weight 1) is
//! covariantly constant. Frame fields are `X = alpha/F^2` and `Y = beta/F^4`.

use crate::cases::SeqMember;
use crate::error::CoreError;
use crate::field::{along_vector, contract, cross, partial, Connection, Vec2};
use crate::invariants::{d, q, Engine};
use cubic_ode_expr::RatFn;

/// `r F^e`.
#[derive(Clone, Debug, PartialEq)]
pub struct Scaled {
    pub r: RatFn,
    pub e: i32,
}

impl Scaled {
    /// A rational function of `x, y` that is constant, or functionally
    /// dependent on another, exactly when `r F^e` is: `r f^(e/5)` when `5 | e`,
    /// else `r^5 f^e`.
    pub fn rational(&self, f5: &RatFn) -> RatFn {
        if self.e % 5 == 0 {
            &self.r * f5.powi((self.e / 5) as i64)
        } else {
            self.r.powi(5) * f5.powi(self.e as i64)
        }
    }
}

pub struct General {
    pub f5: RatFn,
    pub alpha: Vec2,
    pub beta: Vec2,
    pub conn: Connection,
    /// `d ln f`.
    dlog: Vec2,
}

impl General {
    pub fn new(engine: &mut Engine) -> Result<Self, CoreError> {
        let f5 = engine.f5();
        if f5.is_zero() {
            return Err(CoreError::Precondition("F = 0: not the general case".into()));
        }
        let dlog = [partial(&f5, 0) / &f5, partial(&f5, 1) / &f5];
        let phi = [&dlog[0] * q(-1, 5), &dlog[1] * q(-1, 5)];
        let conn = Connection::new(engine.ode(), phi);
        Ok(General { f5, alpha: engine.alpha(), beta: engine.beta(), conn, dlog })
    }

    /// `I3, I6, I7, I8`: frame coefficients of `nabla_X Y`, `nabla_Y X`,
    /// `nabla_Y Y` with `d_ij X^i Y^j = 3/F`.
    pub fn base(&self) -> [(String, Scaled); 4] {
        let (al, be, c) = (&self.alpha, &self.beta, &self.conn);
        let dab = along_vector(al, be, 4, c);
        let dba = along_vector(be, al, 2, c);
        let dbb = along_vector(be, be, 4, c);
        let third = q(1, 3);
        [
            ("I3".into(), Scaled { r: cross(&dab, be) * &third, e: -9 }),
            ("I6".into(), Scaled { r: cross(al, &dba) * &third, e: -7 }),
            ("I7".into(), Scaled { r: cross(&dbb, be) * &third, e: -11 }),
            ("I8".into(), Scaled { r: cross(al, &dbb) * &third, e: -9 }),
        ]
    }

    /// The four base invariants as printed, with `F_x = f_x F^(-4)/5`.
    pub fn printed_base(&self, engine: &mut Engine) -> [Scaled; 4] {
        let (a, b, g, h) = (engine.a(), engine.b(), engine.g(), engine.h());
        let o = engine.ode().clone();
        let (p, qq, r, s) = (&o.p, &o.q, &o.r, &o.s);
        let (fx, fy) = (partial(&self.f5, 0), partial(&self.f5, 1));
        let coeff = &b * &g * &g * p - (&a * &g * &g - &h * &b * &g * 2) * qq + (&b * &h * &h - &h * &a * &g * 2) * r
            - &a * &h * &h * s;
        let i3 = (&b * (&h * d(&g, 1, 0) - &g * d(&h, 1, 0)) - &a * (&h * d(&g, 0, 1) - &g * d(&h, 0, 1)) + &coeff)
            * q(1, 3)
            + (&h * &fy + &g * &fx) * q(1, 15);
        let i6 = &h * (&a * d(&b, 0, 1) - &b * d(&a, 0, 1)) * q(1, 3) + &g * (&a * d(&b, 1, 0) - &b * d(&a, 1, 0)) * q(1, 3)
            - (&a * &fy - &b * &fx) * q(1, 15)
            - (&g * &b * &b * p + (&h * &b * &b - &g * &b * &a * 2) * qq + (&g * &a * &a - &h * &b * &a * 2) * r
                + &h * &a * &a * s)
                * q(1, 3);
        let i7 = (&g * &h * d(&g, 1, 0) - &g * &g * d(&h, 1, 0) + &h * &h * d(&g, 0, 1) - &h * &g * d(&h, 0, 1)
            + g.powi(3) * p
            + &g * &g * &h * qq * 3
            + &g * &h * &h * r * 3
            + h.powi(3) * s)
            * q(1, 3);
        let i8 = (&g * (&a * d(&g, 1, 0) + &b * d(&h, 1, 0)) + &h * (&a * d(&g, 0, 1) + &b * d(&h, 0, 1)) - &coeff) * q(1, 3)
            - (&h * &fy + &g * &fx) * q(10, 15);
        [Scaled { r: i3, e: -9 }, Scaled { r: i6, e: -7 }, Scaled { r: i7, e: -11 }, Scaled { r: i8, e: -9 }]
    }

    fn derive(&self, v: &Vec2, shift: i32, s: &Scaled) -> Scaled {
        let grad = [partial(&s.r, 0), partial(&s.r, 1)];
        let r = contract(&grad, v) + &s.r * contract(&self.dlog, v) * q(s.e as i64, 5);
        Scaled { r, e: s.e - shift }
    }

    /// `d(r F^e) / F^e`.
    pub fn gradient(&self, s: &Scaled) -> Vec2 {
        let k = q(s.e as i64, 5);
        [0, 1].map(|i| partial(&s.r, i) + &s.r * &self.dlog[i] * &k)
    }

    /// `X I = alpha^i d_i I / F^2`.
    pub fn x(&self, s: &Scaled) -> Scaled {
        self.derive(&self.alpha, 2, s)
    }

    /// `Y I = beta^i d_i I / F^4`.
    pub fn y(&self, s: &Scaled) -> Scaled {
        self.derive(&self.beta, 4, s)
    }

    pub fn roots(&self) -> Vec<(SeqMember, Scaled)> {
        self.base()
            .into_iter()
            .map(|(name, s)| {
                let m = SeqMember { name: name.clone(), path: name, depth: 0, value: s.rational(&self.f5) };
                (m, s)
            })
            .collect()
    }

    /// One level of the sequence: `X` of every parent, then `Y` of every parent.
    pub fn children(&self, parents: &[(SeqMember, Scaled)]) -> Vec<(SeqMember, Scaled)> {
        let mut out = Vec::with_capacity(parents.len() * 2);
        for (tag, op) in [("X", 8), ("Y", 16)] {
            for (m, s) in parents {
                let c = if tag == "X" { self.x(s) } else { self.y(s) };
                let path = format!("{tag}({})", m.path);
                let name = match (m.depth, m.name.strip_prefix('I').and_then(|k| k.parse::<u32>().ok())) {
                    (0, Some(k)) => format!("I{}", k + op),
                    _ => path.clone(),
                };
                out.push((SeqMember { name, path, depth: m.depth + 1, value: c.rational(&self.f5) }, c));
            }
        }
        out
    }
}
