//! Transcribed formulas against worked values and against independent
//! derivations from the defining relations.

use cubic_ode_core::field::{contract, cross, frame_numerator, grad, raise};
use cubic_ode_core::{parse_ode, point_transform, Branch, Engine, OdeCubic, PointMap};
use cubic_ode_expr::kernel::{X, Y};
use cubic_ode_expr::{decide_zero, parse_expr, AssumptionSet, ProbeConfig, RatFn};

fn ode(s: &str) -> OdeCubic {
    parse_ode(s, &AssumptionSet::new()).unwrap()
}

fn rf(s: &str) -> RatFn {
    parse_expr(s).unwrap().to_ratfn().unwrap()
}

fn engine(s: &str) -> Engine {
    Engine::new(&ode(s), ProbeConfig::default())
}

fn assert_zero(v: &RatFn, what: &str) {
    let verdict = decide_zero(v, &AssumptionSet::new(), &ProbeConfig::default());
    assert!(verdict.is_zero(), "{what}: {verdict}");
}

/// `x~ = x + 2y`, `y~ = y - x` applied to an equation, written in the new letters.
fn rotated(s: &str) -> OdeCubic {
    let map = PointMap::parse("x + 2*y", "y - x").unwrap().with_inverse(rf("(x - 2*y)/3"), rf("(x + y)/3"));
    point_transform(&ode(s), &map, &ProbeConfig::default()).unwrap().ode
}

#[test]
fn painleve_one_values() {
    let mut e = engine("y'' = 6*y^2 + x");
    assert_eq!(e.a(), RatFn::from_int(12));
    assert!(e.b().is_zero());
    assert_eq!(e.theta_cap().unwrap(), rf("-y/12"));
    assert_eq!(e.case7_l1().unwrap(), rf("-1/20736"));
    let inv = e.case7().unwrap();
    assert_eq!(inv[0].1, rf("1/(12*x^5)"));
    assert_eq!(inv[1].1, rf("12*y^2/x"));
    let [w, v] = e.case7_wv().unwrap();
    assert!(w.is_zero() && v.is_zero());
}

#[test]
fn painleve_one_family_w() {
    let mut e = engine("y'' = 6*y^2 + x^2");
    let [w, v] = e.case7_wv().unwrap();
    assert_eq!(w, rf("2/248832"));
    assert!(v.is_zero());
    let mut e = engine("y'' = 6*y^2 + m*x + n");
    assert_eq!(e.case7_l1().unwrap(), rf("-m/20736"));
    assert_eq!(e.case7().unwrap()[0].1, rf("m^4/(12*(m*x + n)^5)"));
}

#[test]
fn cubic_in_yp_values() {
    let mut e = engine("y'' = (-2*x^3 - x*y + a)*yp^3");
    assert!(e.a().is_zero());
    assert_eq!(e.b(), rf("-12*x"));
    assert_eq!(e.m().unwrap(), rf("288/5"));
    let named = e.case1_named().unwrap();
    let get = |n: &str| named.iter().find(|(k, _)| k == n).unwrap().1.clone();
    assert_eq!(get("I1"), rf("18/5"));
    assert_eq!(get("I3"), rf("(2*x^3 + x*y - a)/(30*x^3)"));
    assert_eq!(get("I6"), rf("(2*x*y - 3*a)/(10*x^3)"));
    assert_eq!(get("I9"), rf("1/(2500*x^6)"));
}

#[test]
fn cubic_in_y_family_values() {
    let mut e = engine("y'' = y^3 + (m*x + n)*y + p*x + c");
    assert_eq!(e.a(), rf("6*y"));
    assert_eq!(e.m().unwrap(), rf("72/5"));
    let named = e.case1_named().unwrap();
    let get = |n: &str| named.iter().find(|(k, _)| k == n).unwrap().1.clone();
    assert_eq!(get("I1"), rf("18/5"));
    assert_eq!(get("I3"), rf("(y^3 + (m*x + n)*y + p*x + c)/(15*y^3)"));
    assert_eq!(get("I6"), rf("(2*(m*x + n)*y + 3*(p*x + c))/(5*y^3)"));
    assert_eq!(get("I9"), rf("2*(m*y + p)^2/(625*y^8)"));
}

#[test]
fn kamke_6_75_values() {
    let mut e = engine("y'' = -(2/x)*yp - exp(y)");
    assert_eq!(e.a(), rf("-exp(y)"));
    assert_eq!(e.m().unwrap(), rf("exp(2*y)/15"));
    let [i1, _, i3] = e.case1_base().unwrap();
    assert_eq!(i1, rf("3/5"));
    assert_eq!(i3, rf("1/15 - 4/(15*x^2*exp(y))"));
}

#[test]
fn painleve_34_values() {
    let mut e = engine("y'' = yp^2/(2*y) + 4*a*y^2 - x*y - 1/(2*y)");
    assert_eq!(e.a(), rf("6*a - 3/(2*y^3)"));
    assert!(e.b().is_zero());
    assert_eq!(e.m().unwrap(), rf("9*a*(35 + 4*a*y^3)/(10*y^5)"));
    assert!(e.z().unwrap().is_zero());
}

const SAMPLES: [&str; 5] = [
    "y'' = 2*y^3 + x*y + 1/3",
    "y'' = (-2*x^3 - x*y + 2)*yp^3",
    "y'' = -(2/x)*yp - exp(y)",
    "y'' = yp^2/(2*y) + 4*y^2 - x*y - 1/(2*y)",
    "y'' = yp^2/y - yp/x + (y^2 + 2)/x + 3*y^3 - 1/y",
];

fn branches(s: &str) -> Vec<Engine> {
    let o = ode(s);
    let mut out = Vec::new();
    for br in [Branch::A, Branch::B] {
        let mut e = Engine::new(&o, ProbeConfig::default());
        let nz = match br {
            Branch::A => !e.a().is_zero(),
            Branch::B => !e.b().is_zero(),
        };
        if nz {
            e.force_branch(br);
            out.push(e);
        }
    }
    out
}

#[test]
fn omega_is_the_curl_of_phi() {
    let mut all: Vec<OdeCubic> = SAMPLES.iter().map(|s| ode(s)).collect();
    all.push(rotated("y'' = 2*y^3 + x*y + 1/3"));
    for o in all {
        for br in [Branch::A, Branch::B] {
            let mut e = Engine::new(&o, ProbeConfig::default());
            if (br == Branch::A && e.a().is_zero()) || (br == Branch::B && e.b().is_zero()) {
                continue;
            }
            e.force_branch(br);
            let phi = e.phi().unwrap();
            let curl = (phi[0].diff(Y) - phi[1].diff(X)) * RatFn::ratio(5, 3);
            let om = e.omega_cap().unwrap();
            assert_zero(&(om - curl), &format!("Omega {br:?} for {o}"));
        }
    }
}

#[test]
fn defining_relations_of_n_m_gamma() {
    let mut all: Vec<OdeCubic> = SAMPLES.iter().map(|s| ode(s)).collect();
    all.push(rotated("y'' = 2*y^3 + x*y + 1/3"));
    for o in all {
        for br in [Branch::A, Branch::B] {
            let mut e = Engine::new(&o, ProbeConfig::default());
            if (br == Branch::A && e.a().is_zero()) || (br == Branch::B && e.b().is_zero()) {
                continue;
            }
            e.force_branch(br);
            let (al, be, n) = (e.alpha(), e.beta(), e.n().unwrap());
            for k in 0..2 {
                assert_zero(&(&be[k] - &al[k] * &n * 3), "beta - 3 N alpha");
            }
            let phi = e.phi().unwrap();
            let xi = raise(&grad(&n, 2, &phi));
            let ac = e.alpha_cov();
            let m = e.m().unwrap();
            assert_zero(&(&m + contract(&ac, &xi)), &format!("M {br:?} for {o}"));
            let om = e.omega_cap().unwrap();
            let g = e.gamma().unwrap();
            for k in 0..2 {
                let want = -&xi[k] - &al[k] * &om * 2;
                assert_zero(&(&g[k] - want), &format!("gamma{k} {br:?} for {o}"));
            }
            let eta = raise(&grad(&m, 4, &phi));
            assert_zero(&(e.z().unwrap() - cross(&eta, &xi)), "Z");
        }
    }
}

#[test]
fn branch_agreement() {
    for o in [rotated("y'' = 2*y^3 + x*y + 1/3"), rotated("y'' = y^(-3)"), rotated("y'' = 6*y^2 + x")] {
        let mut ea = Engine::new(&o, ProbeConfig::default());
        let mut eb = Engine::new(&o, ProbeConfig::default());
        ea.force_branch(Branch::A);
        eb.force_branch(Branch::B);
        let pa = ea.phi().unwrap();
        let pb = eb.phi().unwrap();
        for k in 0..2 {
            assert_zero(&(&pa[k] - &pb[k]), "phi");
        }
        assert_zero(&(ea.omega_cap().unwrap() - eb.omega_cap().unwrap()), "Omega");
        assert_zero(&(ea.n().unwrap() - eb.n().unwrap()), "N");
        assert_zero(&(ea.m().unwrap() - eb.m().unwrap()), "M");
        let ga = ea.gamma().unwrap();
        let gb = eb.gamma().unwrap();
        for k in 0..2 {
            assert_zero(&(&ga[k] - &gb[k]), "gamma");
        }
        if ea.m().unwrap().is_zero() {
            assert_zero(&(ea.lambda().unwrap() - eb.lambda().unwrap()), "Lambda");
            let wa = ea.omega_cov().unwrap();
            let wb = eb.omega_cov().unwrap();
            for k in 0..2 {
                assert_zero(&(&wa[k] - &wb[k]), &format!("omega{k} for {o}"));
            }
            assert_zero(&(ea.k().unwrap() - eb.k().unwrap()), "K");
        }
    }
}

#[test]
fn lambda_and_k_relations() {
    // gamma = Lambda alpha and N omega + nabla Lambda + nabla Omega / 3 = K alpha
    for s in ["y'' = y^(-3)", "y'' = -x^2/y^3", "y'' = 6*y^2 + x", "y'' = y^(-3) + x*yp^3"] {
        for mut e in branches(s) {
            let (al, g) = (e.alpha(), e.gamma().unwrap());
            if !e.m().unwrap().is_zero() {
                continue;
            }
            let lam = e.lambda().unwrap();
            for k in 0..2 {
                assert_zero(&(&g[k] - &lam * &al[k]), &format!("gamma - Lambda alpha for {s}"));
            }
            let (n, w, om, phi, kk) = (e.n().unwrap(), e.omega_cov().unwrap(), e.omega_cap().unwrap(), e.phi().unwrap(), e.k().unwrap());
            let gl = grad(&lam, 1, &phi);
            let go = grad(&om, 1, &phi);
            let ac = e.alpha_cov();
            for k in 0..2 {
                let wk = &n * &w[k] + &gl[k] + &go[k] * RatFn::ratio(1, 3);
                assert_zero(&(wk - &kk * &ac[k]), &format!("w - K alpha for {s}"));
            }
        }
    }
}

#[test]
fn printed_frame_denominators() {
    // case 1: alpha_i gamma^i = M
    let mut e = engine("y'' = 2*y^3 + x*y + 1/3");
    let g = e.gamma().unwrap();
    assert_zero(&(e.alpha_dot(&g) - e.m().unwrap()), "case 1");
    // case 7: alpha_i theta^i = -1 and the printed sign pattern
    let mut e = engine("y'' = 6*y^2 + x*y");
    let t = e.theta_vec().unwrap();
    assert_eq!(e.alpha_dot(&t), RatFn::from_int(-1));
    let printed = -frame_numerator(e.ode(), &t);
    assert_zero(&(e.case7_l().unwrap() + e.theta_cap().unwrap().powi(2) * RatFn::ratio(1, 2) - printed), "case 7");
}

/// `R^k_q = R^k_{q12}` of the connection `Gamma`.
fn curvature(e: &mut Engine) -> [[RatFn; 2]; 2] {
    let g = e.connection().unwrap().gamma;
    let d = |f: &RatFn, i: usize| if i == 0 { f.diff(X) } else { f.diff(Y) };
    let mut out = [[RatFn::zero(), RatFn::zero()], [RatFn::zero(), RatFn::zero()]];
    for k in 0..2 {
        for qq in 0..2 {
            let mut v = d(&g[k][1][qq], 0) - d(&g[k][0][qq], 1);
            for s in 0..2 {
                v = v + &g[k][0][s] * &g[s][1][qq] - &g[k][1][s] * &g[s][0][qq];
            }
            out[k][qq] = v;
        }
    }
    out
}

#[test]
fn omega_matches_the_eigenvalue_route() {
    for o in [rotated("y'' = y^(-3)"), rotated("y'' = 6*y^2 + x"), ode("y'' = -x^2/y^3"), ode("y'' = 6*y^2 + x")] {
        for br in [Branch::A, Branch::B] {
            let mut e = Engine::new(&o, ProbeConfig::default());
            if (br == Branch::A && e.a().is_zero()) || (br == Branch::B && e.b().is_zero()) {
                continue;
            }
            e.force_branch(br);
            let r = curvature(&mut e);
            let w = e.omega_cov().unwrap();
            let (a, b) = (e.a(), e.b());
            let lam2 = match br {
                Branch::A => {
                    assert_zero(&(&w[0] + &r[1][0] / &a), "omega1 = -R^2_1/A");
                    &a * &w[1] + &r[1][1]
                }
                Branch::B => {
                    assert_zero(&(&w[1] - &r[0][1] / &b), "omega2 = R^1_2/B");
                    &r[0][0] - &b * &w[0]
                }
            };
            let char_poly = (&r[0][0] - &lam2) * (&r[1][1] - &lam2) - &r[0][1] * &r[1][0];
            assert_zero(&char_poly, &format!("lambda2 is an eigenvalue ({br:?}) for {o}"));
        }
    }
}
