//! Text format for polynomials.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := ('+' | '-') factor | atom ('^' integer)?
//! atom   := integer ('/' integer)? | 'x' index | '(' expr ')'
//! ```
//!
//! Variables are `x1 .. x<nvars>`; whitespace is ignored.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::multipoly::MultiPoly;
use crate::scalar::Rational;

type Poly = MultiPoly<Rational>;

pub fn parse_poly(text: &str, nvars: usize) -> Result<Poly> {
    if nvars < 1 {
        return Err(Error::NoVariables);
    }
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        nvars,
    };
    let p = parser.expr()?;
    parser.skip_ws();
    if parser.pos < parser.src.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(p)
}

/// Largest variable index mentioned in `text`, if any.
pub fn max_variable_index(text: &str) -> Option<usize> {
    let bytes = text.as_bytes();
    let mut best = None;
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b'x' {
            let start = i + 1;
            let mut j = start;
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            if let Ok(k) = text[start..j].parse::<usize>() {
                best = best.max(Some(k));
            }
            i = j;
        } else {
            i += 1;
        }
    }
    best
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            message: message.to_string(),
        }
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

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.factor()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.factor()
            }
            _ => {
                let base = self.atom()?;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.skip_ws();
                    let exp = self.integer()?;
                    let exp: u32 = exp.try_into().map_err(|_| self.error("exponent too large"))?;
                    Ok(base.pow(exp))
                } else {
                    Ok(base)
                }
            }
        }
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'x') => {
                let start = self.pos;
                self.pos += 1;
                if !self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    return Err(self.error("expected variable index after 'x'"));
                }
                let index = self.integer()?;
                let index: usize = index.try_into().unwrap_or(usize::MAX);
                if index < 1 || index > self.nvars {
                    return Err(Error::VariableOutOfRange {
                        index,
                        nvars: self.nvars,
                        pos: start,
                    });
                }
                Ok(Poly::var(self.nvars, index - 1))
            }
            Some(c) if c.is_ascii_digit() => {
                let num = BigInt::from(self.integer()?);
                let num = self.big_tail(num);
                let value = if self.src.get(self.pos) == Some(&b'/') {
                    self.pos += 1;
                    if !self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                        return Err(self.error("expected denominator"));
                    }
                    let den = BigInt::from(self.integer()?);
                    let den = self.big_tail(den);
                    if den.is_zero() {
                        return Err(self.error("zero denominator"));
                    }
                    Rational::new(num, den)
                } else {
                    Rational::from_integer(num)
                };
                Ok(Poly::constant(self.nvars, value))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    /// Reads a run of digits that fits in `u64`.
    fn integer(&mut self) -> Result<u64> {
        let start = self.pos;
        let mut value: u64 = 0;
        while let Some(&c) = self.src.get(self.pos) {
            if !c.is_ascii_digit() {
                break;
            }
            match value.checked_mul(10).and_then(|v| v.checked_add((c - b'0') as u64)) {
                Some(v) => value = v,
                None => break,
            }
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected integer"));
        }
        Ok(value)
    }

    /// Continues a numeral whose digits overflowed `u64`.
    fn big_tail(&mut self, mut n: BigInt) -> BigInt {
        while let Some(&c) = self.src.get(self.pos) {
            if !c.is_ascii_digit() {
                break;
            }
            n = n * 10 + (c - b'0') as u32;
            self.pos += 1;
        }
        n
    }
}
