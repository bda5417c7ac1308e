//! Polynomial text syntax:
//!
//! ```text
//! expr   := ["-"] term (("+" | "-") term)*
//! term   := factor ("*" factor)*
//! factor := coeff | var ("^" uint)?
//! coeff  := int ("/" uint)?
//! ```
//!
//! Whitespace is ignored everywhere. Positions in errors are byte offsets.

use num_bigint::BigInt;

use crate::error::{Error, Result};

use super::monomial::Monomial;
use super::polynomial::{Polynomial, RingRef};
use super::scalar::Scalar;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a RingRef,
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

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an unsigned integer");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut negate = false;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            negate = true;
        }
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                None => return Ok(acc),
                Some(c) => return self.err(format!("unexpected character `{}`", c as char)),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let field = self.ring.field();
        let mut coeff: Scalar = field.one();
        let mut mono = Monomial::one(self.ring.nvars());
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let start = self.pos;
                    let num = self.uint()?;
                    let c = if self.peek() == Some(b'/') {
                        self.pos += 1;
                        let den = self.uint()?;
                        field.from_ratio(&num, &den).map_err(|e| match e {
                            Error::Unrepresentable(s) => Error::Unrepresentable(format!("{s} (at position {start})")),
                            e => e,
                        })?
                    } else {
                        field.from_bigint(&num)
                    };
                    coeff = &coeff * &c;
                }
                Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                    let start = self.pos;
                    while self.pos < self.src.len()
                        && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                    {
                        self.pos += 1;
                    }
                    let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                    let idx = self.ring.var_index(name).ok_or_else(|| Error::UnknownVariable {
                        name: name.to_string(),
                        pos: start,
                    })?;
                    let mut e = 1u32;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        let at = self.pos;
                        let n = self.uint()?;
                        e = u32::try_from(n).or_else(|_| {
                            self.pos = at;
                            self.err("exponent too large")
                        })?;
                    }
                    let mut exps = mono.exponents().to_vec();
                    exps[idx] += e;
                    mono = Monomial::from_exponents(&exps);
                }
                Some(c) => return self.err(format!("expected a coefficient or variable, found `{}`", c as char)),
                None => return self.err("unexpected end of input"),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok(Polynomial::monomial(self.ring, mono, coeff));
            }
        }
    }
}

/// Parses `text` into the canonical polynomial of `ring`.
pub fn parse_polynomial(text: &str, ring: &RingRef) -> Result<Polynomial> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        ring,
    };
    p.expr()
}
