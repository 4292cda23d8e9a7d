//! Plain-text polynomial format.
//!
//! ```text
//! poly   := sign? term (sign term)*
//! term   := factor ('*' factor)*
//! factor := integer ('/' integer)? | ('x1' | 'x2') ('^' integer)?
//! ```
//!
//! Whitespace is ignored. Ideal files hold one generator per line; blank
//! lines and lines starting with `#` are skipped.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::{Polynomial, Rational};
use crate::error::{Error, Result};
use crate::staircase::LatticePoint;

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    _src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str, line: usize) -> Self {
        Cursor {
            chars: src.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
            line,
            _src: src,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.pos += 1;
        c
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            message: message.into(),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error(format!("expected a number at column {}", start + 1)));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits
            .parse()
            .map_err(|_| self.error(format!("bad number `{digits}`")))
    }

    fn exponent(&mut self) -> Result<u32> {
        if self.peek() != Some('^') {
            return Ok(1);
        }
        self.bump();
        let k = self.integer()?;
        u32::try_from(k).map_err(|_| self.error("exponent too large"))
    }

    fn factor(&mut self, coeff: &mut Rational, exp: &mut LatticePoint) -> Result<()> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let value = if self.peek() == Some('/') {
                    self.bump();
                    let den = self.integer()?;
                    if den.is_zero() {
                        return Err(self.error("division by zero"));
                    }
                    Rational::new(num, den)
                } else {
                    Rational::from_integer(num)
                };
                *coeff *= value;
                Ok(())
            }
            Some('x') => {
                self.bump();
                let var = self.bump();
                let k = self.exponent()?;
                match var {
                    Some('1') => exp.a1 += k,
                    Some('2') => exp.a2 += k,
                    _ => return Err(self.error("unknown variable; expected x1 or x2")),
                }
                Ok(())
            }
            Some(c) => Err(self.error(format!("unexpected `{c}` at column {}", self.pos + 1))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn term(&mut self) -> Result<(LatticePoint, Rational)> {
        let mut coeff = Rational::one();
        let mut exp = LatticePoint::ORIGIN;
        self.factor(&mut coeff, &mut exp)?;
        while self.peek() == Some('*') {
            self.bump();
            self.factor(&mut coeff, &mut exp)?;
        }
        Ok((exp, coeff))
    }

    fn polynomial(&mut self) -> Result<Polynomial> {
        if self.chars.is_empty() {
            return Err(self.error("empty polynomial"));
        }
        let mut terms = Vec::new();
        let mut first = true;
        loop {
            let negative = match self.peek() {
                Some('+') => {
                    self.bump();
                    false
                }
                Some('-') => {
                    self.bump();
                    true
                }
                None => break,
                Some(c) if !first => {
                    return Err(self.error(format!(
                        "expected `+` or `-` at column {}, found `{c}`",
                        self.pos + 1
                    )))
                }
                Some(_) => false,
            };
            first = false;
            let (e, c) = self.term()?;
            terms.push((e, if negative { -c } else { c }));
        }
        Ok(Polynomial::from_terms(terms))
    }
}

/// Parses one polynomial; errors refer to line `line`.
pub fn parse_polynomial_at(src: &str, line: usize) -> Result<Polynomial> {
    Cursor::new(src, line).polynomial()
}

pub fn parse_polynomial(src: &str) -> Result<Polynomial> {
    parse_polynomial_at(src, 1)
}

/// Parses an ideal file: one generator per line.
pub fn parse_generators(src: &str) -> Result<Vec<Polynomial>> {
    let mut out = Vec::new();
    for (i, line) in src.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        out.push(parse_polynomial_at(trimmed, i + 1)?);
    }
    Ok(out)
}
