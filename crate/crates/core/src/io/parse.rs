//! Recursive-descent parser for polynomial expressions in `z`.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := factor ('*' factor)*
//! factor  := ('+' | '-') factor | base ('^' uint)?
//! base    := integer ('/' integer)? | 'z' | '(' expr ')'
//! ```

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{Poly, Rat};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        if self.eat(b'-') {
            return Ok(-self.factor()?);
        }
        if self.eat(b'+') {
            return self.factor();
        }
        let base = self.base()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        match self.peek() {
            Some(b'-') => Err(Error::NonPolynomial { offset: self.pos }),
            Some(c) if c.is_ascii_digit() => {
                let e = self.digits()?;
                let e: usize = e
                    .try_into()
                    .ok()
                    .filter(|&e| e <= 1 << 16)
                    .map_or_else(|| self.syntax("exponent too large"), Ok)?;
                Ok(base.pow(e))
            }
            _ => self.syntax("expected exponent"),
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.syntax("expected digits");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digit string"))
    }

    fn base(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'z') => {
                self.pos += 1;
                Ok(Poly::z())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return self.syntax("expected ')'");
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits()?;
                if !self.eat(b'/') {
                    return Ok(Poly::constant(Rat::from_integer(num)));
                }
                let den_at = self.pos;
                let den = self.digits()?;
                if den.is_zero() {
                    return Err(Error::Syntax {
                        offset: den_at,
                        message: "zero denominator".into(),
                    });
                }
                Ok(Poly::constant(Rat::new(num, den)))
            }
            Some(c) if c.is_ascii_alphabetic() => Err(Error::UnsupportedVariable {
                offset: self.pos,
                name: c as char,
            }),
            Some(_) => self.syntax("unexpected character"),
            None => self.syntax("unexpected end of input"),
        }
    }
}

/// Parses an expression such as `"-(2/3)*z^3 + 1/2"`.
pub fn parse_poly(text: &str) -> Result<Poly> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let poly = p.expr()?;
    if p.peek().is_some() {
        return p.syntax("trailing input");
    }
    Ok(poly)
}
