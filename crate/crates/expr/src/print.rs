use crate::expr::{is_negative_term, Expr};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use std::fmt;

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render(self))
    }
}

fn render(e: &Expr) -> String {
    match e {
        Expr::Num(q) => q.to_string(),
        Expr::Sym(s) => s.clone(),
        Expr::Add(ts) => {
            let mut out = String::new();
            for (i, t) in ts.iter().enumerate() {
                if i == 0 {
                    out.push_str(&render(t));
                } else if is_negative_term(t) {
                    out.push_str(" - ");
                    out.push_str(&render(&negate(t)));
                } else {
                    out.push_str(" + ");
                    out.push_str(&render(t));
                }
            }
            out
        }
        Expr::Mul(fs) => render_product(fs),
        Expr::Pow(b, r) => {
            if r.is_negative() {
                return render_product(std::slice::from_ref(e));
            }
            format!("{}^{}", render_base(b), render_exponent(r))
        }
        Expr::Func(func, a) => format!("{}({})", func.name(), render(a)),
    }
}

fn negate(e: &Expr) -> Expr {
    match e {
        Expr::Num(q) => Expr::Num(-q),
        Expr::Mul(fs) => {
            let mut fs = fs.clone();
            if let Expr::Num(q) = &fs[0] {
                let nq = -q;
                if nq.is_one() && fs.len() > 1 {
                    fs.remove(0);
                } else {
                    fs[0] = Expr::Num(nq);
                }
            }
            Expr::mul(fs)
        }
        other => other.clone(),
    }
}

fn render_exponent(r: &BigRational) -> String {
    if r.is_integer() && !r.is_negative() {
        r.to_string()
    } else {
        format!("({})", r)
    }
}

fn is_atom(e: &Expr) -> bool {
    match e {
        Expr::Sym(_) | Expr::Func(..) => true,
        Expr::Num(q) => q.is_integer() && !q.is_negative(),
        _ => false,
    }
}

fn render_base(b: &Expr) -> String {
    if is_atom(b) {
        render(b)
    } else {
        format!("({})", render(b))
    }
}

/// Factor inside a product: sums and signed numbers need parentheses.
fn render_factor(e: &Expr) -> String {
    match e {
        Expr::Add(_) | Expr::Mul(_) => format!("({})", render(e)),
        Expr::Num(q) if q.is_negative() || !q.is_integer() => format!("({})", q),
        _ => render(e),
    }
}

fn render_product(fs: &[Expr]) -> String {
    let mut sign = false;
    let mut numer: Vec<String> = Vec::new();
    let mut denom: Vec<String> = Vec::new();
    for (i, f) in fs.iter().enumerate() {
        match f {
            Expr::Num(q) if i == 0 => {
                if q.is_negative() {
                    sign = true;
                }
                let a = q.numer().abs();
                if a != BigInt::one() {
                    numer.push(a.to_string());
                }
                if !q.denom().is_one() {
                    denom.push(q.denom().to_string());
                }
            }
            Expr::Pow(b, r) if r.is_negative() => {
                let pr = -r;
                if pr.is_one() {
                    denom.push(render_factor(b));
                } else {
                    denom.push(format!("{}^{}", render_base(b), render_exponent(&pr)));
                }
            }
            _ => numer.push(render_factor(f)),
        }
    }
    let mut out = String::new();
    if sign {
        out.push('-');
    }
    if numer.is_empty() {
        out.push('1');
    } else {
        out.push_str(&numer.join("*"));
    }
    match denom.len() {
        0 => {}
        1 => {
            out.push('/');
            out.push_str(&denom[0]);
        }
        _ => {
            out.push_str("/(");
            out.push_str(&denom.join("*"));
            out.push(')');
        }
    }
    out
}
