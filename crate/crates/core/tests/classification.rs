//! Case labels and symmetry dimensions of the worked examples.

use cubic_ode_core::catalog::{painleve, parse_params, Family};
use cubic_ode_core::classify::{analyze, classify, functional_independence, is_constant, Independence};
use cubic_ode_core::general::General;
use cubic_ode_core::{parse_ode, Engine, OdeCubic};
use cubic_ode_expr::{parse_expr, AssumptionSet, ProbeConfig, RatFn};

fn ode(s: &str) -> OdeCubic {
    parse_ode(s, &AssumptionSet::new()).unwrap()
}

fn rf(s: &str) -> RatFn {
    parse_expr(s).unwrap().to_ratfn().unwrap()
}

fn family(f: Family, params: &str) -> OdeCubic {
    painleve(f, &parse_params(params).unwrap()).unwrap()
}

fn label(o: &OdeCubic) -> String {
    classify(&mut Engine::new(o, ProbeConfig::default())).case.label()
}

fn dim(o: &OdeCubic) -> Option<u8> {
    analyze(o, ProbeConfig::default(), 3).0.dimension.unwrap().value
}

#[test]
fn painleve_table() {
    let cases = [
        (Family::P1, "", "7.1"),
        (Family::P2, "1", "1.4"),
        (Family::P2, "0", "1.4"),
        (Family::P3, "1,2,3,5", "1.3"),
        (Family::P4, "1,1", "1.3"),
        (Family::P5, "1,2,3,5", "1.3"),
        (Family::P6, "1,2,3,5", "1.3"),
        (Family::P3, "0,0,0,1", "1.4"),
        (Family::P3, "0,2,0,3", "1.4"),
        (Family::P3, "2,0,3,0", "1.4"),
        (Family::P5, "1,2,0,0", "1.4"),
        (Family::P3, "0,0,0,0", "maximal"),
        (Family::P5, "0,0,0,0", "maximal"),
        (Family::P6, "0,0,0,1/2", "maximal"),
    ];
    for (f, p, want) in cases {
        assert_eq!(label(&family(f, p)), want, "{} ({p})", f.name());
    }
}

#[test]
fn symmetry_dimensions() {
    for (s, want) in [
        ("y'' = 0", 8),
        ("y'' = 1/y^3", 3),
        ("y'' = 2*yp^2 + 3*y", 1),
        ("y'' = y^2 + 4*y*yp + y^2*yp^2", 1),
        ("y'' = -x/y^3", 1),
        ("y'' = 6*y^2 + x", 0),
    ] {
        assert_eq!(dim(&ode(s)), Some(want), "{s}");
    }
    assert_eq!(dim(&family(Family::P3, "0,0,0,1")), Some(2));
    assert_eq!(dim(&family(Family::P2, "1")), Some(0));
}

#[test]
fn kamke_6_54_is_general() {
    let (r, _) = analyze(&ode("y'' = y^2 + 4*y*yp + y^2*yp^2"), ProbeConfig::default(), 3);
    assert_eq!(r.case.label(), "general");
    assert_eq!(r.dimension.unwrap().up_to_depth, Some(3));
}

#[test]
fn kamke_6_5_is_painleve_one_like() {
    // b != 0 translates and scales onto y'' = 6y^2 + x.
    for s in ["y'' = y^2 + 2*x + 4", "y'' = y^2 + 2*x + 5"] {
        assert_eq!(label(&ode(s)), "7.1");
        assert_eq!(dim(&ode(s)), Some(0));
    }
    assert_eq!(dim(&ode("y'' = y^2 + 5")), Some(1));
    assert_eq!(dim(&ode("y'' = y^2")), Some(2));
}

#[test]
fn trace_follows_tree_order() {
    let r = classify(&mut Engine::new(&family(Family::P4, "1,1"), ProbeConfig::default()));
    let names: Vec<_> = r.trace.iter().map(|t| t.predicate.as_str()).collect();
    assert_eq!(names, ["A", "F^5", "N", "Omega", "M", "Z"]);
    let r = classify(&mut Engine::new(&ode("y'' = 1/y^3"), ProbeConfig::default()));
    let names: Vec<_> = r.trace.iter().map(|t| t.predicate.as_str()).collect();
    assert_eq!(names, ["A", "F^5", "N", "Omega", "M", "Lambda", "K + 5/9"]);
    let again = classify(&mut Engine::new(&ode("y'' = 1/y^3"), ProbeConfig::default()));
    assert_eq!(r, again);
}

#[test]
fn probed_verdicts_carry_sample_count() {
    let r = classify(&mut Engine::new(&ode("y'' = 6*y^2 + x"), ProbeConfig::default()));
    for t in &r.trace {
        if t.verdict.provenance == "probed" {
            assert_eq!(t.verdict.samples, Some(16));
            assert_eq!(t.verdict.threshold_log10, Some(-30.0));
        }
    }
    assert_eq!(r.trace[0].verdict.provenance, "symbolic");
}

#[test]
fn constancy_and_independence() {
    let (a, c) = (AssumptionSet::new(), ProbeConfig::default());
    assert_eq!(is_constant(&rf("18/5"), &a, &c), Some(true));
    assert_eq!(is_constant(&rf("1/15 - 4/(15*x^2*exp(y))"), &a, &c), Some(false));
    assert_eq!(is_constant(&RatFn::zero(), &a, &c), Some(true));
    let ind = |u: &str, v: &str| functional_independence(&rf(u), &rf(v), &a, &c);
    assert_eq!(ind("1/(12*x^5)", "12*y^2/x"), Independence::Independent);
    assert_eq!(ind("3", "7/2"), Independence::Dependent);
    assert_eq!(ind("x + y", "(x + y)^2"), Independence::Dependent);
}

#[test]
fn printed_general_invariants_match_the_frame() {
    for s in ["y'' = y^2 + 4*y*yp + y^2*yp^2", "y'' = x*y + (x + y^2)*yp + x*yp^2 + (y - x^2)*yp^3"] {
        let mut e = Engine::new(&ode(s), ProbeConfig::default());
        let g = General::new(&mut e).unwrap();
        let printed = g.printed_base(&mut e);
        for ((name, d), p) in g.base().iter().zip(&printed) {
            assert_eq!(d, p, "{name} of {s}");
        }
    }
}
