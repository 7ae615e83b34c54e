//! Painlevé equations in the cubic form.

use crate::error::CoreError;
use crate::ode::{parse_ode, OdeCubic};
use cubic_ode_expr::kernel;
use cubic_ode_expr::{parse_expr, AssumptionSet, RatFn};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    P1,
    P2,
    P3,
    P4,
    P5,
    P6,
    P34,
}

impl Family {
    pub const ALL: [Family; 7] = [Family::P1, Family::P2, Family::P3, Family::P4, Family::P5, Family::P6, Family::P34];

    pub fn name(self) -> &'static str {
        match self {
            Family::P1 => "p1",
            Family::P2 => "p2",
            Family::P3 => "p3",
            Family::P4 => "p4",
            Family::P5 => "p5",
            Family::P6 => "p6",
            Family::P34 => "p34",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Family::P1 => 0,
            Family::P2 | Family::P34 => 1,
            Family::P4 => 2,
            Family::P3 | Family::P5 | Family::P6 => 4,
        }
    }

    /// Right-hand side with the parameters written `_a`, `_b`, `_c`, `_d`.
    fn template(self) -> &'static str {
        match self {
            Family::P1 => "6*y^2 + x",
            Family::P2 => "2*y^3 + x*y + _a",
            Family::P3 => "yp^2/y - yp/x + (_a*y^2 + _b)/x + _c*y^3 + _d/y",
            Family::P4 => "yp^2/(2*y) + (3/2)*y^3 + 4*x*y^2 + 2*(x^2 - _a)*y + _b/y",
            Family::P5 => {
                "(1/(2*y) + 1/(y - 1))*yp^2 - yp/x + (y - 1)^2/x^2*(_a*y + _b/y) + _c*y/x + _d*y*(y + 1)/(y - 1)"
            }
            Family::P6 => {
                "(1/y + 1/(y - 1) + 1/(y - x))*yp^2/2 - (1/x + 1/(x - 1) + 1/(y - x))*yp \
                 + y*(y - 1)*(y - x)/(x^2*(x - 1)^2)*(_a + _b*x/y^2 + _c*(x - 1)/(y - 1)^2 + _d*x*(x - 1)/(y - x)^2)"
            }
            Family::P34 => "yp^2/(2*y) + 4*_a*y^2 - x*y - 1/(2*y)",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<Self, CoreError> {
        let l = s.trim().to_ascii_lowercase();
        Family::ALL
            .into_iter()
            .find(|f| f.name() == l)
            .ok_or_else(|| CoreError::UnknownFamily(s.to_string()))
    }
}

/// Instantiates a family; parameters may be any constant expressions,
/// including symbols.
pub fn painleve(family: Family, params: &[RatFn]) -> Result<OdeCubic, CoreError> {
    if params.len() != family.arity() {
        return Err(CoreError::ParameterCount {
            family: family.name().into(),
            expected: family.arity(),
            got: params.len(),
        });
    }
    for p in params {
        if p.depends_on(kernel::X) || p.depends_on(kernel::Y) {
            return Err(CoreError::Equation("Painlevé parameters must not depend on x or y".into()));
        }
    }
    let ode = parse_ode(&format!("y'' = {}", family.template()), &AssumptionSet::new())?;
    let mut map = HashMap::new();
    for (name, v) in ["_a", "_b", "_c", "_d"].iter().zip(params) {
        map.insert(kernel::symbol(name), v.clone());
    }
    if map.is_empty() {
        return Ok(ode);
    }
    Ok(OdeCubic::new(ode.p.subs(&map)?, ode.q.subs(&map)?, ode.r.subs(&map)?, ode.s.subs(&map)?))
}

/// Parses a comma-separated parameter list such as `1,0,a,1/2`.
pub fn parse_params(text: &str) -> Result<Vec<RatFn>, CoreError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(|t| Ok(parse_expr(t.trim())?.to_ratfn()?)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(s: &str) -> RatFn {
        parse_expr(s).unwrap().to_ratfn().unwrap()
    }

    #[test]
    fn displayed_forms() {
        let p1 = painleve(Family::P1, &[]).unwrap();
        assert_eq!(p1.p, rf("6*y^2 + x"));
        let p3 = painleve(Family::P3, &parse_params("0,0,0,0").unwrap()).unwrap();
        assert!(p3.p.is_zero() && p3.s.is_zero());
        assert_eq!(p3.q, rf("-1/(3*x)"));
        assert_eq!(p3.r, rf("1/(3*y)"));
        let p34 = painleve(Family::P34, &[RatFn::symbol("a")]).unwrap();
        assert_eq!(p34.p, rf("4*a*y^2 - x*y - 1/(2*y)"));
        assert_eq!(p34.r, rf("1/(6*y)"));
        let p4 = painleve(Family::P4, &[RatFn::symbol("a"), RatFn::symbol("b")]).unwrap();
        assert_eq!(p4.p, rf("(3/2)*y^3 + 4*x*y^2 + 2*(x^2 - a)*y + b/y"));
        assert!(p4.q.is_zero() && p4.s.is_zero());
    }

    #[test]
    fn special_cases_match_displayed_equations() {
        let p5 = painleve(Family::P5, &parse_params("0,0,0,0").unwrap()).unwrap();
        let shown = parse_ode("y'' = (1/(2*y) + 1/(y - 1))*yp^2 - yp/x", &AssumptionSet::new()).unwrap();
        assert_eq!(p5, shown);
        let p6 = painleve(Family::P6, &parse_params("0,0,0,1/2").unwrap()).unwrap();
        let shown = parse_ode(
            "y'' = (1/y + 1/(y - 1) + 1/(y - x))*yp^2/2 - (1/x + 1/(x - 1) + 1/(y - x))*yp + y*(y - 1)/(2*x*(x - 1)*(y - x))",
            &AssumptionSet::new(),
        )
        .unwrap();
        assert_eq!(p6, shown);
    }

    #[test]
    fn errors() {
        assert!(matches!("p7".parse::<Family>(), Err(CoreError::UnknownFamily(_))));
        assert!(matches!(painleve(Family::P2, &[]), Err(CoreError::ParameterCount { .. })));
    }
}
