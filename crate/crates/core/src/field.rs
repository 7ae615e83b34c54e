//! Pseudotensorial fields on the `(x, y)` plane and their covariant derivative.
//!
//! Index 1 is `x`, index 2 is `y`; arrays are zero-based. Components of a
//! field with `upper` contravariant and `lower` covariant indices are stored
//! flat, upper indices first, the first index most significant.

use crate::ode::OdeCubic;
use cubic_ode_expr::kernel::{X, Y};
use cubic_ode_expr::RatFn;

pub type Vec2 = [RatFn; 2];

#[derive(Clone, Debug, PartialEq)]
pub struct PseudoField {
    pub upper: usize,
    pub lower: usize,
    pub weight: i32,
    pub comps: Vec<RatFn>,
}

impl PseudoField {
    pub fn scalar(v: RatFn, weight: i32) -> Self {
        PseudoField { upper: 0, lower: 0, weight, comps: vec![v] }
    }

    pub fn vector(v: Vec2, weight: i32) -> Self {
        PseudoField { upper: 1, lower: 0, weight, comps: v.to_vec() }
    }

    pub fn covector(v: Vec2, weight: i32) -> Self {
        PseudoField { upper: 0, lower: 1, weight, comps: v.to_vec() }
    }

    pub fn rank(&self) -> usize {
        self.upper + self.lower
    }

    fn index(&self, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &i| acc * 2 + i)
    }

    pub fn get(&self, idx: &[usize]) -> &RatFn {
        &self.comps[self.index(idx)]
    }

    pub fn as_vec2(&self) -> Vec2 {
        assert_eq!(self.rank(), 1);
        [self.comps[0].clone(), self.comps[1].clone()]
    }
}

fn multi_index(n: usize, rank: usize) -> Vec<usize> {
    (0..rank).map(|k| (n >> (rank - 1 - k)) & 1).collect()
}

pub fn partial(f: &RatFn, k: usize) -> RatFn {
    f.diff(if k == 0 { X } else { Y })
}

/// Connection `Gamma^k_ij = Theta^k_ij - (phi_i delta^k_j + phi_j delta^k_i)/3`.
#[derive(Clone, Debug)]
pub struct Connection {
    /// `theta[k][i][j]`: the coefficient array with its first index raised.
    pub theta: [[[RatFn; 2]; 2]; 2],
    pub phi: Vec2,
    pub gamma: [[[RatFn; 2]; 2]; 2],
}

impl Connection {
    pub fn new(ode: &OdeCubic, phi: Vec2) -> Self {
        let (p, q, r, s) = (&ode.p, &ode.q, &ode.r, &ode.s);
        let theta = [
            [[q.clone(), r.clone()], [r.clone(), s.clone()]],
            [[-p, -q], [-q, -r]],
        ];
        let mut gamma = theta.clone();
        let third = RatFn::ratio(1, 3);
        for (k, gk) in gamma.iter_mut().enumerate() {
            for (i, gki) in gk.iter_mut().enumerate() {
                for (j, g) in gki.iter_mut().enumerate() {
                    let mut corr = RatFn::zero();
                    if k == j {
                        corr = &corr + &phi[i];
                    }
                    if k == i {
                        corr = &corr + &phi[j];
                    }
                    if !corr.is_zero() {
                        *g = &*g - &(&corr * &third);
                    }
                }
            }
        }
        Connection { theta, phi, gamma }
    }
}

/// `nabla_k F`, the derivative index appended last.
pub fn covariant_derivative(f: &PseudoField, conn: &Connection) -> PseudoField {
    let rank = f.rank();
    let mut comps = Vec::with_capacity(f.comps.len() * 2);
    for n in 0..f.comps.len() {
        let idx = multi_index(n, rank);
        for k in 0..2 {
            let c = &f.comps[n];
            let mut v = partial(c, k);
            if f.weight != 0 && !c.is_zero() {
                v = &v + &(&f.phi_term(conn, k) * c);
            }
            for pos in 0..rank {
                for w in 0..2 {
                    let mut j = idx.clone();
                    j[pos] = w;
                    let other = f.get(&j);
                    if other.is_zero() {
                        continue;
                    }
                    if pos < f.upper {
                        v = &v + &(&conn.gamma[idx[pos]][k][w] * other);
                    } else {
                        v = &v - &(&conn.gamma[w][k][idx[pos]] * other);
                    }
                }
            }
            comps.push(v);
        }
    }
    PseudoField { upper: f.upper, lower: f.lower + 1, weight: f.weight, comps }
}

impl PseudoField {
    fn phi_term(&self, conn: &Connection, k: usize) -> RatFn {
        &conn.phi[k] * self.weight as i64
    }
}

/// Covariant gradient of a scalar of weight `m`.
pub fn grad(s: &RatFn, m: i32, phi: &Vec2) -> Vec2 {
    [&partial(s, 0) + &(&phi[0] * &(s * m as i64)), &partial(s, 1) + &(&phi[1] * &(s * m as i64))]
}

/// `v^i nabla_i s` for a scalar `s` of weight `m`.
pub fn along(v: &Vec2, s: &RatFn, m: i32, phi: &Vec2) -> RatFn {
    let g = grad(s, m, phi);
    &(&v[0] * &g[0]) + &(&v[1] * &g[1])
}

/// `v^i nabla_i w` for a vector `w` of weight `m`.
pub fn along_vector(v: &Vec2, w: &Vec2, m: i32, conn: &Connection) -> Vec2 {
    let d = covariant_derivative(&PseudoField::vector(w.clone(), m), conn);
    [
        &(&v[0] * d.get(&[0, 0])) + &(&v[1] * d.get(&[0, 1])),
        &(&v[0] * d.get(&[1, 0])) + &(&v[1] * d.get(&[1, 1])),
    ]
}

/// `d_ij a^i b^j = a^1 b^2 - a^2 b^1`.
pub fn cross(a: &Vec2, b: &Vec2) -> RatFn {
    &(&a[0] * &b[1]) - &(&a[1] * &b[0])
}

/// Contraction `a_i b^i`.
pub fn contract(cov: &Vec2, vec: &Vec2) -> RatFn {
    &(&cov[0] * &vec[0]) + &(&cov[1] * &vec[1])
}

/// `v^i = d^ij v_j`.
pub fn raise(cov: &Vec2) -> Vec2 {
    [cov[1].clone(), -&cov[0]]
}

/// Inverse of [`raise`].
pub fn lower(vec: &Vec2) -> Vec2 {
    [-&vec[1], vec[0].clone()]
}

/// Numerator of the `alpha`-component of `nabla_v v` in the frame `(alpha, v)`:
/// `v1 v2 (v1_x - v2_y) + v2^2 v1_y - v1^2 v2_x + P v1^3 + 3Q v1^2 v2 + 3R v1 v2^2 + S v2^3`.
/// Dividing by `alpha_i v^i` gives the coefficient; the `phi` terms of the
/// connection and the weight term are proportional to `v` and drop out.
pub fn frame_numerator(ode: &OdeCubic, v: &Vec2) -> RatFn {
    let (v1, v2) = (&v[0], &v[1]);
    let t1 = &(v1 * v2) * &(&partial(v1, 0) - &partial(v2, 1));
    let t2 = &(&(v2 * v2) * &partial(v1, 1)) - &(&(v1 * v1) * &partial(v2, 0));
    let v11 = v1 * v1;
    let v22 = v2 * v2;
    let t3 = &(&(&(&ode.p * &(&v11 * v1)) + &(&(&ode.q * 3) * &(&v11 * v2)))
        + &(&(&ode.r * 3) * &(v1 * &v22)))
        + &(&ode.s * &(&v22 * v2));
    &(&t1 + &t2) + &t3
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ode::parse_ode;
    use cubic_ode_expr::AssumptionSet;

    #[test]
    fn weight_zero_scalar_gives_gradient() {
        let ode = parse_ode("y'' = x*y*yp", &AssumptionSet::new()).unwrap();
        let conn = Connection::new(&ode, [RatFn::x(), RatFn::y()]);
        let f = RatFn::x() * RatFn::y() * RatFn::y();
        let d = covariant_derivative(&PseudoField::scalar(f.clone(), 0), &conn);
        assert_eq!(d.comps, vec![f.diff(X), f.diff(Y)]);
        let c = RatFn::from_int(7);
        let d = covariant_derivative(&PseudoField::scalar(c.clone(), 3), &conn);
        assert_eq!(d.comps, vec![&conn.phi[0] * &(&c * 3), &conn.phi[1] * &(&c * 3)]);
        assert_eq!(d.weight, 3);
        assert_eq!((d.upper, d.lower), (0, 1));
    }

    #[test]
    fn connection_is_symmetric() {
        let ode = parse_ode("y'' = x + y*yp + x*yp^2 + y^2*yp^3", &AssumptionSet::new()).unwrap();
        let conn = Connection::new(&ode, [RatFn::y(), RatFn::x()]);
        for k in 0..2 {
            assert_eq!(conn.gamma[k][0][1], conn.gamma[k][1][0]);
        }
    }

    #[test]
    fn raise_lower() {
        let a = [RatFn::x(), RatFn::y()];
        assert_eq!(lower(&raise(&a)), a);
        assert!(cross(&a, &a).is_zero());
    }
}
