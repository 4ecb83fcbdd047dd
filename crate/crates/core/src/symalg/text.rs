//! Canonical text form of polynomials and rational functions, and its parser.
//!
//! Terms are printed leading-first in graded-lex order; coefficients are
//! integers or `p/q`; symbols print as `a(i,k)`, `s(i,j)` and `h`. The parser
//! accepts this form and, more generally, any expression built from
//! integers and symbols with `+ - * / ^` and parentheses.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::poly::{Monomial, Poly, Rational};
use super::ratfun::RatFun;
use super::symbol::Symbol;
use crate::error::{Error, Result};

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    for (i, &(s, e)) in m.factors().iter().enumerate() {
        if i > 0 {
            f.write_str("*")?;
        }
        write!(f, "{s}")?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write_monomial(f, m)?;
            }
        }
        Ok(())
    }
}

pub fn parse_ratfun(text: &str) -> Result<RatFun> {
    let mut p = Parser::new(text);
    p.skip_ws();
    let v = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(v)
}

/// Parses a polynomial; a non-cancelling quotient is an error.
pub fn parse_poly(text: &str) -> Result<Poly> {
    let r = parse_ratfun(text)?;
    match r.into_poly() {
        Some(p) => Ok(p),
        None => Err(Error::Parse {
            line: 1,
            column: 1,
            message: "expression is not a polynomial".into(),
        }),
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Parser {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
        }
    }

    fn error(&self, message: &str) -> Error {
        let (mut line, mut column) = (1, 1);
        for &c in &self.chars[..self.pos.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        Error::Parse {
            line,
            column,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{c}'")))
        }
    }

    fn expr(&mut self) -> Result<RatFun> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some('-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFun> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some('/') => {
                    self.pos += 1;
                    let at = self.pos;
                    for (f, e) in self.divisor()? {
                        for _ in 0..e {
                            acc = acc.div(&f).map_err(|_| {
                                self.pos = at;
                                self.error("division by zero")
                            })?;
                        }
                    }
                }
                _ => return Ok(acc),
            }
        }
    }

    /// A divisor, kept as separate factors when it is a parenthesized product
    /// such as `((x - y)*(x + h)^2)`, so that printed quotients re-parse to
    /// the same factorization.
    fn divisor(&mut self) -> Result<Vec<(RatFun, u32)>> {
        let start = self.pos;
        if self.peek() == Some('(') {
            self.pos += 1;
            if let Ok(mut factors) = self.factor_list() {
                if self.peek() == Some(')') {
                    self.pos += 1;
                    let e = self.exponent()?;
                    for f in &mut factors {
                        f.1 *= e;
                    }
                    return Ok(factors);
                }
            }
            self.pos = start;
        }
        Ok(vec![(self.unary()?, 1)])
    }

    fn factor_list(&mut self) -> Result<Vec<(RatFun, u32)>> {
        let mut out = vec![self.powered_atom()?];
        while self.peek() == Some('*') {
            self.pos += 1;
            out.push(self.powered_atom()?);
        }
        Ok(out)
    }

    fn powered_atom(&mut self) -> Result<(RatFun, u32)> {
        let base = self.atom()?;
        Ok((base, self.exponent()?))
    }

    fn exponent(&mut self) -> Result<u32> {
        if self.peek() != Some('^') {
            return Ok(1);
        }
        self.pos += 1;
        self.skip_ws();
        let e = self.uint()?;
        u32::try_from(e).map_err(|_| self.error("exponent too large"))
    }

    fn unary(&mut self) -> Result<RatFun> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFun> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.uint()?;
            let e = u32::try_from(e).map_err(|_| self.error("exponent too large"))?;
            let mut out = RatFun::one();
            for _ in 0..e {
                out = out.mul(&base);
            }
            return Ok(out);
        }
        Ok(base)
    }

    fn uint(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn small_uint(&mut self) -> Result<usize> {
        self.skip_ws();
        let at = self.pos;
        let n = self.uint()?;
        usize::try_from(n)
            .ok()
            .filter(|&n| (1..=u16::MAX as usize).contains(&n))
            .ok_or_else(|| {
                self.pos = at;
                self.error("index must be a positive integer")
            })
    }

    fn atom(&mut self) -> Result<RatFun> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.uint()?;
                Ok(RatFun::from_poly(Poly::constant(Rational::from_integer(n))))
            }
            Some('h') => {
                self.pos += 1;
                Ok(RatFun::from_poly(Poly::h()))
            }
            Some(c @ ('a' | 's')) => {
                self.pos += 1;
                self.expect('(')?;
                let i = self.small_uint()?;
                self.expect(',')?;
                let k = self.small_uint()?;
                self.expect(')')?;
                let sym = if c == 'a' {
                    Symbol::a(i, k)
                } else {
                    Symbol::s(i, k)
                };
                Ok(RatFun::from_poly(Poly::var(sym)))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prints_canonically() {
        let p = parse_poly("s(1,1) - a(1,2) + h").unwrap();
        assert_eq!(p.to_string(), "-a(1,2) + s(1,1) + h");
        assert_eq!(parse_poly("h + h").unwrap().to_string(), "2*h");
        assert_eq!(parse_poly("0").unwrap().to_string(), "0");
        assert_eq!(
            parse_poly("1/2*s(1,1)^2 - 3/4").unwrap().to_string(),
            "1/2*s(1,1)^2 - 3/4"
        );
        assert_eq!(
            parse_poly("(s(1,1)+h)^2").unwrap().to_string(),
            "s(1,1)^2 + 2*s(1,1)*h + h^2"
        );
    }

    #[test]
    fn printed_quotients_round_trip() {
        for text in [
            "(s(1,1) + h)/((s(1,1) - s(1,2) - h)*(s(1,1) - s(1,2) + h))",
            "(-h)/((a(1,1) - a(1,2) - h)^2*(s(1,1) - s(1,2)))",
            "1/(s(1,1)^2 + h^2)",
            "(s(1,1))/((a(1,1) - h)*(a(1,2) - s(1,1)))^2",
        ] {
            let f = parse_ratfun(text).unwrap();
            let again = parse_ratfun(&f.to_string()).unwrap();
            assert_eq!(again.to_string(), f.to_string(), "{text}");
            assert_eq!(again, f);
        }
        let f = parse_ratfun("1/((s(1,1) - s(1,2))*(s(1,1) + h))").unwrap();
        assert_eq!(f.denominator_factors().count(), 2);
        let g = parse_ratfun("1/(s(1,1) - s(1,2))*h").unwrap();
        assert_eq!(g, parse_ratfun("h/(s(1,1) - s(1,2))").unwrap());
    }

    #[test]
    fn parses_quotients() {
        let r = parse_ratfun("(h^2 - (s(1,1)-s(1,2))^2)/(s(1,1)-s(1,2)+h)").unwrap();
        assert_eq!(r.as_poly().unwrap().to_string(), "-s(1,1) + s(1,2) + h");
        let r = parse_ratfun("1/(s(1,1)-s(1,2))").unwrap();
        assert!(!r.is_polynomial());
        assert_eq!(parse_ratfun(&r.to_string()).unwrap(), r);
    }

    #[test]
    fn reports_positions() {
        match parse_poly("s(1,1) +\n  x") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_poly("s(0,1)"), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("1/(h-h)"), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("1/h"), Err(Error::Parse { .. })));
    }
}
