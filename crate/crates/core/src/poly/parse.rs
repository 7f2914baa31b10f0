//! Text form of trace polynomials.
//!
//! Terms are separated by `+`/`-`; a term is an optional rational coefficient
//! (`p/q` or an integer) and `*`-separated factors; a factor is `xN` (N >= 1)
//! or `Tr(` word `)` where the word is a `*`-separated list of `xN`.
//! Whitespace is insignificant.

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use super::{TraceMonomial, TracePolynomial};
use crate::rational::Rat;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("syntax error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, byte: u8) -> Result<(), ParseError> {
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected `{}`", byte as char))
        }
    }

    fn digits(&mut self) -> Result<&'a str, ParseError> {
        let start = self.pos;
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_digit())
        {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected digits");
        }
        Ok(std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits"))
    }

    fn variable(&mut self) -> Result<u32, ParseError> {
        self.eat(b'x')?;
        let at = self.pos;
        let digits = self.digits()?;
        let n: u32 = match digits.parse() {
            Ok(n) => n,
            Err(_) => {
                self.pos = at;
                return self.err("variable index out of range");
            }
        };
        if n == 0 {
            self.pos = at;
            return self.err("variable indices start at x1");
        }
        Ok(n)
    }

    fn number(&mut self) -> Result<Rat, ParseError> {
        let numer: BigInt = self.digits()?.parse().expect("digits parse as integer");
        self.skip_ws();
        if self.bytes.get(self.pos) == Some(&b'/') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let denom: BigInt = self.digits()?.parse().expect("digits parse as integer");
            if denom == BigInt::from(0) {
                self.pos = at;
                return self.err("zero denominator");
            }
            Ok(Rat::new(numer, denom))
        } else {
            Ok(Rat::from_integer(numer))
        }
    }

    /// `xN` or `Tr(xA*xB*...)`.
    fn factor(&mut self) -> Result<FactorKind, ParseError> {
        match self.peek() {
            Some(b'x') => Ok(FactorKind::Var(self.variable()?)),
            Some(b'T') => {
                if self.bytes[self.pos..].starts_with(b"Tr") {
                    self.pos += 2;
                    self.eat(b'(')?;
                    if self.peek() == Some(b')') {
                        return self.err("empty trace block");
                    }
                    let mut word = vec![self.variable()?];
                    while self.peek() == Some(b'*') {
                        self.pos += 1;
                        word.push(self.variable()?);
                    }
                    self.eat(b')')?;
                    Ok(FactorKind::Block(word))
                } else {
                    self.err("expected `Tr(`")
                }
            }
            _ => self.err("expected a factor `xN` or `Tr(...)`"),
        }
    }

    fn term(&mut self) -> Result<(Rat, TraceMonomial), ParseError> {
        let mut coeff = Rat::one();
        let mut blocks: Vec<Vec<u32>> = Vec::new();
        let mut outside: Vec<u32> = Vec::new();

        if self.peek().is_some_and(|b| b.is_ascii_digit()) {
            coeff = self.number()?;
            if self.peek() != Some(b'*') {
                // bare constant term
                return Ok((coeff, TraceMonomial::one()));
            }
            self.pos += 1;
        }
        loop {
            match self.factor()? {
                FactorKind::Var(v) => outside.push(v),
                FactorKind::Block(w) => blocks.push(w),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        let refs: Vec<&[u32]> = blocks.iter().map(|w| w.as_slice()).collect();
        let mono = TraceMonomial::new(&refs, &outside)
            .expect("parser only produces nonempty blocks and 1-based variables");
        Ok((coeff, mono))
    }

    fn poly(&mut self) -> Result<TracePolynomial, ParseError> {
        let mut out = TracePolynomial::zero();
        let mut sign = Rat::one();
        if self.peek() == Some(b'-') {
            self.pos += 1;
            sign = -sign;
        } else if self.peek() == Some(b'+') {
            self.pos += 1;
        }
        loop {
            let (c, m) = self.term()?;
            out.add_term(m, c * &sign);
            match self.peek() {
                None => return Ok(out),
                Some(b'+') => {
                    self.pos += 1;
                    sign = Rat::one();
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -Rat::one();
                }
                Some(_) => return self.err("expected `+`, `-`, or end of input"),
            }
        }
    }
}

enum FactorKind {
    Var(u32),
    Block(Vec<u32>),
}

/// Parse the polynomial DSL. The inverse of the `Display` form on canonical
/// polynomials.
pub fn parse_poly(text: &str) -> Result<TracePolynomial, ParseError> {
    let mut p = Parser::new(text);
    if p.peek().is_none() {
        return p.err("empty input");
    }
    p.poly()
}
