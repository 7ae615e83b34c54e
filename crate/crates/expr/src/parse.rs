//! Recursive-descent parser for the expression grammar.
//!
//! ```text
//! expr     := ['+'|'-'] term (('+'|'-') term)*
//! term     := factor (('*'|'/') factor)*
//! factor   := '-' factor | base ('^' exponent)?
//! base     := number | symbol | func '(' expr ')' | '(' expr ')'
//! exponent := ['-'] integer | '(' ['-'] integer ['/' integer] ')'
//! ```

use crate::error::ExprError;
use crate::expr::{Expr, Func};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub fn parse_expr(text: &str) -> Result<Expr, ExprError> {
    parse_with(text, None)
}

/// Parses and rejects symbols outside `allowed`.
pub fn parse_expr_with_symbols(text: &str, allowed: &[&str]) -> Result<Expr, ExprError> {
    parse_with(text, Some(allowed))
}

fn parse_with(text: &str, allowed: Option<&[&str]>) -> Result<Expr, ExprError> {
    let mut p = Parser { s: text.as_bytes(), pos: 0, allowed };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    allowed: Option<&'a [&'a str]>,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> ExprError {
        ExprError::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ExprError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut terms = Vec::new();
        let first_neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let t = self.term()?;
        terms.push(if first_neg { t.neg() } else { t });
        loop {
            if self.eat(b'+') {
                terms.push(self.term()?);
            } else if self.eat(b'-') {
                terms.push(self.term()?.neg());
            } else {
                break;
            }
        }
        Ok(Expr::add(terms))
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut factors = vec![self.factor()?];
        loop {
            if self.eat(b'*') {
                factors.push(self.factor()?);
            } else if self.eat(b'/') {
                let d = self.factor()?;
                factors.push(Expr::pow(d, -BigRational::one()));
            } else {
                break;
            }
        }
        Ok(Expr::mul(factors))
    }

    fn factor(&mut self) -> Result<Expr, ExprError> {
        if self.eat(b'-') {
            return Ok(self.factor()?.neg());
        }
        let b = self.base()?;
        if self.eat(b'^') {
            let e = self.exponent()?;
            return Ok(Expr::Pow(Box::new(b), e));
        }
        Ok(b)
    }

    fn exponent(&mut self) -> Result<BigRational, ExprError> {
        if self.eat(b'(') {
            let neg = self.eat(b'-');
            let n = self.integer()?;
            let mut q = BigRational::from_integer(n);
            if self.eat(b'/') {
                let d = self.integer()?;
                if d.is_zero() {
                    return Err(self.err("zero denominator in exponent"));
                }
                q /= BigRational::from_integer(d);
            }
            self.expect(b')')?;
            return Ok(if neg { -q } else { q });
        }
        let neg = self.eat(b'-');
        let n = BigRational::from_integer(self.integer()?);
        Ok(if neg { -n } else { n })
    }

    fn integer(&mut self) -> Result<BigInt, ExprError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let t = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        Ok(t.parse().unwrap())
    }

    fn base(&mut self) -> Result<Expr, ExprError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.pos]).unwrap().to_string();
                if self.peek() == Some(b'(') {
                    let f = Func::from_name(&name).ok_or(ExprError::UnknownFunction(name))?;
                    self.pos += 1;
                    let a = self.expr()?;
                    self.expect(b')')?;
                    return Ok(Expr::func(f, a));
                }
                if let Some(allowed) = self.allowed {
                    if !allowed.contains(&name.as_str()) {
                        return Err(ExprError::UndeclaredSymbol(name));
                    }
                }
                Ok(Expr::Sym(name))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    /// Integer or decimal literal, converted to an exact rational.
    fn number(&mut self) -> Result<Expr, ExprError> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let int_part = std::str::from_utf8(&self.s[start..self.pos]).unwrap().to_string();
        let mut frac = String::new();
        if self.pos < self.s.len() && self.s[self.pos] == b'.' {
            self.pos += 1;
            let fs = self.pos;
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            frac = std::str::from_utf8(&self.s[fs..self.pos]).unwrap().to_string();
        }
        if int_part.is_empty() && frac.is_empty() {
            return Err(self.err("malformed number"));
        }
        let digits = format!("{}{}", int_part, frac);
        let n: BigInt = digits.parse().unwrap();
        let d = num_traits::pow(BigInt::from(10), frac.len());
        Ok(Expr::Num(BigRational::new(n, d)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar() {
        assert_eq!(parse_expr("0").unwrap(), Expr::int(0));
        let e = parse_expr("6*y^2 + x").unwrap();
        assert_eq!(
            e,
            Expr::Add(vec![
                Expr::Mul(vec![Expr::int(6), Expr::Pow(Box::new(Expr::sym("y")), BigRational::from_integer(2.into()))]),
                Expr::sym("x"),
            ])
        );
        let e = parse_expr("sin(y)^3*(6*x*cos(y)^2 + sin(y))").unwrap();
        assert_eq!(e.free_symbols().into_iter().collect::<Vec<_>>(), vec!["x", "y"]);
        assert_eq!(parse_expr("x^(1/2)").unwrap(), Expr::Pow(Box::new(Expr::sym("x")), BigRational::new(1.into(), 2.into())));
        assert_eq!(parse_expr("2.5").unwrap(), Expr::rational(5, 2));
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_expr("x +"), Err(ExprError::Syntax { .. })));
        assert!(matches!(parse_expr("foo(x)"), Err(ExprError::UnknownFunction(_))));
        assert!(matches!(parse_expr_with_symbols("x + b", &["x", "y"]), Err(ExprError::UndeclaredSymbol(_))));
        assert!(matches!(parse_expr("(x"), Err(ExprError::Syntax { .. })));
    }
}
