//! Property tests: weight law, invariance under point maps, internal identities.

mod support;

use cubic_ode_core::catalog::{painleve, parse_params, Family};
use cubic_ode_core::equivalence::{check, Outcome, Target};
use cubic_ode_core::{analyze, point_transform, Branch, Engine, OdeCubic, PointMap};
use cubic_ode_expr::ProbeConfig;
use proptest::prelude::*;
use support::*;

fn family(f: Family, p: &str) -> OdeCubic {
    painleve(f, &parse_params(p).unwrap()).unwrap()
}

/// Equations with `F = 0` covering nonzero `Omega`, `N`, `M` and `Z`.
fn weight_corpus() -> Vec<OdeCubic> {
    vec![ode("y'' = y*yp + y^3"), family(Family::P4, "1, 1"), family(Family::P3, "1, 1, 1, 1")]
}

fn transformed(o: &OdeCubic, map: &PointMap) -> OdeCubic {
    point_transform(o, map, &ProbeConfig::default()).unwrap().ode
}

fn affine_map() -> impl Strategy<Value = PointMap> {
    (-3i64..=3, -3i64..=3, -3i64..=3, -3i64..=3, -2i64..=2, -2i64..=2)
        .prop_filter("invertible", |&(a, b, c, d, _, _)| a * d != b * c)
        .prop_map(|(a, b, c, d, e, f)| affine(a, b, c, d, e, f))
}

fn det(map: &PointMap) -> i64 {
    map.jacobian().as_rational().unwrap().numer().try_into().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(5))]

    #[test]
    fn weight_law_under_affine_maps(map in affine_map()) {
        let d = det(&map);
        for o in weight_corpus() {
            let t = transformed(&o, &map);
            let (mut e0, mut e1) = (Engine::new(&o, ProbeConfig::default()), Engine::new(&t, ProbeConfig::default()));
            for ((name, w, j), (_, _, jt)) in weighted(&mut e0).into_iter().zip(weighted(&mut e1)) {
                if j.is_zero() {
                    prop_assert!(jt.is_zero(), "{name} appears under the map for {o}");
                    continue;
                }
                prop_assert!(is_zero(&(&j - map.pull_back(&jt).unwrap() * d.pow(w as u32))), "{name} for {o}");
                let err = transfer_error(&j, &jt, &map, d.pow(w as u32), 50).unwrap();
                prop_assert!(err < -25.0, "{name} for {o}: {err}");
            }
        }
    }

    #[test]
    fn classification_is_invariant(map in affine_map(), k in 0usize..4) {
        let o = [family(Family::P2, "1"), family(Family::P4, "1, 1"), ode("y'' = y^(-3)"), ode("y'' = 6*y^2 + x")][k].clone();
        let (a, _) = analyze(&o, ProbeConfig::default(), 1);
        let (b, _) = analyze(&transformed(&o, &map), ProbeConfig::default(), 1);
        prop_assert_eq!(a.case.label(), b.case.label());
    }

    #[test]
    fn transforms_compose(m1 in affine_map(), m2 in affine_map()) {
        let o = family(Family::P2, "1");
        let stepwise = transformed(&transformed(&o, &m1), &m2);
        let direct = transformed(&o, &compose(&m1, &m2));
        for (u, v) in stepwise.coeffs().into_iter().zip(direct.coeffs()) {
            prop_assert!(is_zero(&(u - v)));
        }
    }

    #[test]
    fn equivalence_verdicts_are_stable(map in affine_map()) {
        let cases = [
            (Target::P1, ode("y'' = 6*y^2 + x"), Outcome::Equivalent),
            (Target::P1, ode("y'' = 6*y^2 + x^2"), Outcome::NotEquivalent),
            (Target::P2, family(Family::P2, "1"), Outcome::Equivalent),
            (Target::P3Zero, ode("y'' = yp^2/y - yp/x - 2*y^2"), Outcome::Equivalent),
        ];
        for (target, o, want) in cases {
            let t = transformed(&o, &map);
            let r = check(target, &mut Engine::new(&t, ProbeConfig::default()));
            prop_assert_eq!(r.verdict, want, "{} for {}: {:?}", target, t, r.failed_condition);
        }
    }
}

/// Weight-zero quantities of the equations' own cases.
fn true_invariants(e: &mut Engine) -> Vec<(String, cubic_ode_expr::RatFn)> {
    let r = cubic_ode_core::classify(e);
    match r.case.label().as_str() {
        "1.4" | "1.3" => e.case1_named().unwrap(),
        "7.1" => e.case7().unwrap(),
        "4" => e.case4().unwrap(),
        other => panic!("no probe for case {other}"),
    }
}

#[test]
fn true_invariants_survive_inversion_of_y() {
    let map = PointMap::parse("x", "1/y").unwrap().with_inverse(rf("x"), rf("1/y"));
    for o in [family(Family::P2, "1"), family(Family::P4, "1, 1"), ode("y'' = 6*y^2 + x"), ode("y'' = y^(-3) + x")] {
        let t = transformed(&o, &map);
        let (mut e0, mut e1) = (Engine::new(&o, ProbeConfig::default()), Engine::new(&t, ProbeConfig::default()));
        for ((name, i), (_, it)) in true_invariants(&mut e0).into_iter().zip(true_invariants(&mut e1)) {
            assert!(is_zero(&(&i - map.pull_back(&it).unwrap())), "{name} for {o}");
            if let Some(err) = transfer_error(&i, &it, &map, 1, 50) {
                assert!(err < -25.0, "{name} for {o}: {err}");
            }
        }
    }
}

fn engines(o: &OdeCubic) -> Vec<Engine> {
    let mut out = Vec::new();
    for br in [Branch::A, Branch::B] {
        let mut e = Engine::new(o, ProbeConfig::default());
        if (br == Branch::A && e.a().is_zero()) || (br == Branch::B && e.b().is_zero()) {
            continue;
        }
        e.force_branch(br);
        out.push(e);
    }
    out
}

#[test]
fn beta_is_three_n_alpha() {
    for o in [family(Family::P2, "1"), family(Family::P4, "1, 2"), ode("y'' = y*yp + y^3"), ode("y'' = 6*y^2 + x")] {
        for mut e in engines(&o) {
            let (al, be, n) = (e.alpha(), e.beta(), e.n().unwrap());
            for k in 0..2 {
                assert!(is_zero(&(&be[k] - &al[k] * &n * 3)), "{o}");
            }
        }
    }
}

#[test]
fn gamma_is_lambda_alpha_once_m_vanishes() {
    for o in [ode("y'' = y^(-3)"), ode("y'' = -x^2/y^3"), ode("y'' = y^(-3) + x"), ode("y'' = 6*y^2 + x")] {
        for mut e in engines(&o) {
            assert!(e.m().unwrap().is_zero(), "{o}");
            let (al, g, lam) = (e.alpha(), e.gamma().unwrap(), e.lambda().unwrap());
            for k in 0..2 {
                assert!(is_zero(&(&g[k] - &lam * &al[k])), "{o}");
            }
        }
    }
}

#[test]
fn omega_is_theta_alpha_in_cases_four_and_seven() {
    for (o, case) in [(ode("y'' = y^(-3) + x^2"), "4"), (ode("y'' = y^(-3) + x"), "4"), (ode("y'' = 6*y^2 + x"), "7.1"), (ode("y'' = 6*y^2 + x*y"), "7.1")] {
        for mut e in engines(&o) {
            assert_eq!(cubic_ode_core::classify(&mut e).case.label(), case, "{o}");
            let (al, w, th) = (e.alpha_cov(), e.omega_cov().unwrap(), e.theta_cap().unwrap());
            for k in 0..2 {
                assert!(is_zero(&(&w[k] - &th * &al[k])), "{o}");
            }
        }
    }
}

#[test]
fn l_is_k_plus_five_ninths_in_case_four() {
    for o in [ode("y'' = y^(-3) + 1"), ode("y'' = y^(-3) + x"), ode("y'' = y^(-3) + x + y")] {
        for mut e in engines(&o) {
            let (l, k) = (e.theta_l().unwrap(), e.k().unwrap());
            assert!(is_zero(&(l - k - rf("5/9"))), "{o}");
        }
    }
}

#[test]
fn i2_vanishes_for_painleve_three_to_six() {
    for (f, p) in [(Family::P3, "1, 2, 3, 4"), (Family::P4, "1, 2"), (Family::P5, "1, 2, 3, 4"), (Family::P6, "1, 2, 3, 4")] {
        let mut e = Engine::new(&family(f, p), ProbeConfig::default());
        let named = e.case1_named().unwrap();
        let i2 = &named.iter().find(|(n, _)| n == "I2").unwrap().1;
        assert!(i2.is_zero(), "{f:?}");
    }
}
