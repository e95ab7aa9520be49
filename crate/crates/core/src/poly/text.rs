//! Canonical text form of polynomials.
//!
//! Terms are printed leading first, without spaces, e.g.
//! `z[1,1]^2-3/2*hbar*z[1,2]+1`. The parser accepts this form and
//! the usual infix syntax with parentheses, `^`, and division by nonzero
//! constants.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Polynomial, Var};
use crate::scalar::{Rational, Scalar};

impl<C: Scalar> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms().rev().enumerate() {
            let cs = c.to_string();
            let (neg, abs) = match cs.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, cs.as_str()),
            };
            if neg {
                f.write_str("-")?;
            } else if k > 0 {
                f.write_str("+")?;
            }
            if m.is_one() {
                f.write_str(abs)?;
            } else {
                if abs != "1" {
                    write!(f, "{abs}*")?;
                }
                write!(f, "{m}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at offset {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

type P = Polynomial<Rational>;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { position: self.pos, message: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<(), ParseError> {
        if self.eat(b) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", b as char))
        }
    }

    fn digits(&mut self) -> Result<&'a str, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }

    fn small(&mut self) -> Result<u16, ParseError> {
        let at = self.pos;
        let d = self.digits()?;
        d.parse::<u16>()
            .ok()
            .filter(|&k| k >= 1)
            .ok_or(ParseError { position: at, message: format!("index {d} must be a positive integer") })
    }

    fn expr(&mut self) -> Result<P, ParseError> {
        let mut acc = if self.eat(b'-') {
            -self.term()?
        } else {
            self.eat(b'+');
            self.term()?
        };
        loop {
            if self.eat(b'+') {
                acc += self.term()?;
            } else if self.eat(b'-') {
                acc -= self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<P, ParseError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.factor()?;
            } else if self.peek() == Some(b'/') {
                let at = self.pos;
                self.pos += 1;
                let d = self.factor()?;
                let c = d.constant_term();
                if d.len() > 1 || (d.len() == 1 && c.is_zero()) || d.is_zero() {
                    return Err(ParseError { position: at, message: "can only divide by a nonzero constant".into() });
                }
                acc = acc.scale(&(Rational::one() / c));
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<P, ParseError> {
        if self.eat(b'-') {
            return Ok(-self.factor()?);
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            let at = self.pos;
            let e = self.digits()?;
            let e: u32 = e
                .parse()
                .map_err(|_| ParseError { position: at, message: format!("exponent {e} too large") })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<P, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(b) if b.is_ascii_digit() => {
                let d = self.digits()?;
                let n: BigInt = d.parse().expect("digits parse");
                Ok(P::constant(Rational::from_integer(n)))
            }
            Some(b) if b.is_ascii_alphabetic() || b == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier");
                match name {
                    "x" => Ok(P::var(Var::X)),
                    "z" => {
                        self.expect(b'[')?;
                        let i = self.small()?;
                        self.expect(b',')?;
                        let a = self.small()?;
                        self.expect(b']')?;
                        Ok(P::var(Var::Z { vertex: i - 1, slot: a }))
                    }
                    "y" => {
                        self.expect(b'[')?;
                        let k = self.small()?;
                        self.expect(b']')?;
                        Ok(P::var(Var::Aux(k)))
                    }
                    _ => Ok(P::var(Var::param(name))),
                }
            }
            Some(b) => self.err(format!("unexpected character '{}'", b as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses a polynomial over the rationals.
pub fn parse_polynomial(s: &str) -> Result<Polynomial<Rational>, ParseError> {
    let mut p = Parser { src: s.as_bytes(), pos: 0 };
    if p.peek().is_none() {
        return p.err("empty expression");
    }
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}
