//! Parser for rational-function expressions in `z, a1..aN`.
//!
//! Accepts the canonical output of [`RatFunc`]'s `Display` and, more
//! generally, any expression built from integers, variables, `+ - * / ^`
//! and parentheses.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::mpoly::MPoly;
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

pub fn parse_ratfunc(s: &str, nvars: usize) -> Result<RatFunc> {
    let mut p = Parser { s: s.as_bytes(), pos: 0, nvars };
    let r = p.expr()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(p.err("trailing input"));
    }
    Ok(r)
}

pub fn parse_poly(s: &str, nvars: usize) -> Result<MPoly> {
    let r = parse_ratfunc(s, nvars)?;
    let c = r.den().as_constant().ok_or_else(|| Error::Parse(format!("not a polynomial: {s}")))?;
    Ok(r.num().scale(&c.recip()))
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    nvars: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at byte {} of {:?}", self.pos, String::from_utf8_lossy(self.s)))
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

    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
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

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.power()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.power()?;
                    acc = acc.div(&d).map_err(|_| self.err("division by zero"))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let neg = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let e = self.uint()?;
            let e: i32 = e.try_into().map_err(|_| self.err("exponent too large"))?;
            return base.pow(if neg { -e } else { e }).map_err(|_| self.err("division by zero"));
        }
        Ok(base)
    }

    fn uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        Ok(txt.parse().unwrap())
    }

    fn atom(&mut self) -> Result<RatFunc> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let r = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(r)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(self.power()?.neg())
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.uint()?;
                Ok(RatFunc::constant(self.nvars, BigRational::from_integer(n)))
            }
            Some(b'z') => {
                self.pos += 1;
                Ok(RatFunc::var(self.nvars, 0))
            }
            Some(b'a') => {
                self.pos += 1;
                let k = self.uint()?;
                let k: usize = k.try_into().map_err(|_| self.err("bad variable index"))?;
                if k == 0 || k >= self.nvars {
                    return Err(self.err("variable index out of range"));
                }
                Ok(RatFunc::var(self.nvars, k))
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}
