//! Polynomial text grammar.
//!
//! ```text
//! poly  := ["-"] term (("+" | "-") term)*
//! term  := factor ("*" factor)*
//! factor:= number | number "/" number | var | var "^" int
//! ```
//!
//! Example: `3*x0^2*y1 - y0*y1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use super::{Field, Monomial, MultiPoly, RingRef};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("column {column}: {message}")]
pub struct ParseError {
    /// 1-based character column.
    pub column: usize,
    pub message: String,
}

struct Lexer<'a> {
    chars: Vec<char>,
    pos: usize,
    _src: &'a str,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Self { chars: src.chars().collect(), pos: 0, _src: src }
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

    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError { column: self.pos + 1, message: message.into() }
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("digits parse"))
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.chars.len() && (self.chars[self.pos].is_ascii_alphanumeric() || self.chars[self.pos] == '_') {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }
}

/// Parses `src` as an element of `ring`.
pub fn parse_poly<F: Field>(src: &str, ring: &RingRef<F>) -> Result<MultiPoly<F>, ParseError> {
    let mut lex = Lexer::new(src);
    let field = ring.field();
    let nvars = ring.num_vars();
    let mut terms = Vec::new();
    let mut sign = BigInt::one();
    if lex.peek() == Some('-') {
        lex.pos += 1;
        sign = -sign;
    } else if lex.peek() == Some('+') {
        lex.pos += 1;
    }
    loop {
        let mut coeff = BigRational::from_integer(sign.clone());
        let mut mono = Monomial::one(nvars);
        loop {
            match lex.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let num = lex.integer()?;
                    let mut value = BigRational::from_integer(num);
                    if lex.peek() == Some('/') {
                        lex.pos += 1;
                        let col = lex.pos;
                        let den = lex.integer()?;
                        if den.is_zero() {
                            return Err(ParseError { column: col + 1, message: "division by zero".into() });
                        }
                        value /= BigRational::from_integer(den);
                    }
                    coeff *= value;
                }
                Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                    let col = lex.pos;
                    let name = lex.ident();
                    let idx = ring.vars().var_index(&name).ok_or(ParseError {
                        column: col + 1,
                        message: format!("unknown variable `{name}`"),
                    })?;
                    let mut exp: u16 = 1;
                    if lex.peek() == Some('^') {
                        lex.pos += 1;
                        let col = lex.pos;
                        let e = lex.integer()?;
                        exp = e.try_into().map_err(|_| ParseError { column: col + 1, message: "exponent too large".into() })?;
                    }
                    mono.0[idx] += exp;
                }
                Some(c) => return Err(lex.err(format!("unexpected `{c}`"))),
                None => return Err(lex.err("unexpected end of input")),
            }
            if lex.peek() == Some('*') {
                lex.pos += 1;
            } else {
                break;
            }
        }
        let c = field.from_rational(&coeff).map_err(|e| lex.err(e.to_string()))?;
        terms.push((mono, c));
        match lex.peek() {
            None => break,
            Some('+') => {
                lex.pos += 1;
                sign = BigInt::one();
            }
            Some('-') => {
                lex.pos += 1;
                sign = -BigInt::one();
            }
            Some(c) => return Err(lex.err(format!("unexpected `{c}`"))),
        }
    }
    Ok(MultiPoly::from_terms(ring, terms))
}
