//! Canonical text form, e.g. `x2^2 - x1*x3` or `3/2*x1^2 + 7`.
//!
//! Terms are written in descending order. A coefficient of one is omitted
//! unless the monomial is `1`; the zero polynomial renders as `0`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::arith::Scalar;
use crate::error::{Error, Result};

use super::{Monomial, PolyRing, Polynomial};

/// Largest exponent accepted by the parser.
const MAX_EXPONENT: u64 = 1 << 16;
/// Largest total degree accepted by the parser.
const MAX_DEGREE: u64 = 1 << 20;
/// Largest number of terms accepted by the parser.
const MAX_TERMS: usize = 1 << 16;

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, t) in self.terms().iter().enumerate() {
            let neg = t.coeff.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = t.coeff.abs();
            if t.monomial.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", t.monomial)?;
            } else {
                write!(f, "{mag}*{}", t.monomial)?;
            }
        }
        Ok(())
    }
}

impl Polynomial {
    /// Parses the text form produced by `Display`, and any expression of
    /// the shape `[+-] term ([+-] term)*` where a term is a `*`-product of
    /// numbers `a` / `a/b` and powers `x<i>` / `x<i>^<e>`.
    pub fn parse(ring: PolyRing, src: &str) -> Result<Polynomial> {
        Parser {
            ring,
            src: src.as_bytes(),
            pos: 0,
        }
        .expression()
    }
}

struct Parser<'a> {
    ring: PolyRing,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse(format!("{msg} at byte {}", self.pos)))
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> Result<&[u8]> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        Ok(&self.src[start..self.pos])
    }

    fn small_number(&mut self, cap: u64, what: &str) -> Result<u64> {
        let d = self.digits()?;
        let v = std::str::from_utf8(d).ok().and_then(|s| s.parse::<u64>().ok());
        match v {
            Some(v) if v <= cap => Ok(v),
            _ => self.err(&format!("{what} too large")),
        }
    }

    fn expression(mut self) -> Result<Polynomial> {
        let mut terms = Vec::new();
        let mut negate = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            Some(_) => false,
            None => return self.err("empty polynomial"),
        };
        loop {
            if terms.len() >= MAX_TERMS {
                return self.err("too many terms");
            }
            let (m, c) = self.term()?;
            terms.push((m, if negate { -c } else { c }));
            negate = match self.peek() {
                Some(b'+') => false,
                Some(b'-') => true,
                None => break,
                Some(_) => return self.err("expected `+` or `-`"),
            };
            self.pos += 1;
        }
        Polynomial::from_terms(self.ring, terms)
    }

    fn term(&mut self) -> Result<(Monomial, Scalar)> {
        let field = self.ring.field;
        let mut coeff = Scalar::one(field);
        let mut exps = vec![0u64; self.ring.nvars];
        let mut degree = 0u64;
        loop {
            match self.peek() {
                Some(b'x') => {
                    self.pos += 1;
                    let idx = self.small_number(u32::MAX as u64, "variable index")? as usize;
                    if idx == 0 || idx > self.ring.nvars {
                        return self.err(&format!("variable x{idx} outside x1..x{}", self.ring.nvars));
                    }
                    let e = if self.peek() == Some(b'^') {
                        self.pos += 1;
                        self.small_number(MAX_EXPONENT, "exponent")?
                    } else {
                        1
                    };
                    exps[idx - 1] += e;
                    degree += e;
                    if exps[idx - 1] > MAX_EXPONENT || degree > MAX_DEGREE {
                        return self.err("degree too large");
                    }
                }
                Some(b) if b.is_ascii_digit() => {
                    let num = BigInt::parse_bytes(self.digits()?, 10).expect("ascii digits");
                    let den = if self.peek() == Some(b'/') {
                        self.pos += 1;
                        BigInt::parse_bytes(self.digits()?, 10).expect("ascii digits")
                    } else {
                        BigInt::one()
                    };
                    let value = Scalar::from_ratio(field, num, den)?;
                    coeff = &coeff * &value;
                }
                _ => return self.err("expected a number or a variable"),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        let exps = exps
            .into_iter()
            .map(|e| e.to_u32().expect("bounded by MAX_EXPONENT"))
            .collect();
        Ok((Monomial::new(exps), coeff))
    }
}
