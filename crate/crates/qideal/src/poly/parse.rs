//! Recursive-descent parser for the polynomial expression grammar:
//!
//! ```text
//! expr   := ('+' | '-')? term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := INT | 'q' ('^' SINT)? | '(' expr ')'
//! INT    := [0-9]+        SINT := '-'? INT
//! ```
//!
//! Whitespace is ignored. The optional leading sign is needed so that
//! canonical output (which may start with `-`) parses back.

use num_bigint::BigInt;
use std::fmt;

use super::LaurentPoly;

/// Malformed polynomial text, with the byte offset of the offense.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at byte {}: {}",
            self.position, self.message
        )
    }
}

impl std::error::Error for ParseError {}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

pub(super) fn parse(text: &str) -> Result<LaurentPoly, ParseError> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos < p.bytes.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(poly)
}

impl<'a> Parser<'a> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self
            .bytes
            .get(self.pos)
            .is_some_and(u8::is_ascii_whitespace)
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<LaurentPoly, ParseError> {
        let mut negate = false;
        if !self.eat(b'+') {
            negate = self.eat(b'-');
        }
        let first = self.term()?;
        let mut acc = if negate { -&first } else { first };
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

    fn term(&mut self) -> Result<LaurentPoly, ParseError> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<LaurentPoly, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(b'q') => {
                self.pos += 1;
                if self.eat(b'^') {
                    let exp = self.signed_int()?;
                    Ok(LaurentPoly::q_power(exp))
                } else {
                    Ok(LaurentPoly::q())
                }
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(LaurentPoly::constant(n))
            }
            Some(_) => Err(self.error("expected integer, 'q', or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn signed_int(&mut self) -> Result<i64, ParseError> {
        let negative = self.eat(b'-');
        let start = self.pos;
        let n = self.integer()?;
        let n = if negative { -n } else { n };
        i64::try_from(&n).map_err(|_| ParseError {
            position: start,
            message: "exponent out of range".into(),
        })
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected an integer"));
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(digits.parse().unwrap())
    }
}
