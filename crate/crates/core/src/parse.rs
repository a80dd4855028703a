//! Infix syntax for expressions and relations in problem files.
//!
//! Grammar (usual precedence, `^` binds tightest and takes a non-negative
//! integer exponent):
//!
//! ```text
//! relation := sum (('>' | '<' | '>=' | '<=' | '=' | '!=') sum)?
//! sum      := product (('+' | '-') product)*
//! product  := unary (('*' | '/') unary)*
//! unary    := '-' unary | power
//! power    := primary ('^' integer)?
//! primary  := integer | identifier | 'sqrt' '(' integer ')'
//!           | 's' '(' 'x' ')' | '(' sum ')'
//! ```
//!
//! `sqrt(d)` parses to the radical pseudo-variable for `d`, and `s(x)`
//! to the reserved shifted-free-term token.

use num_bigint::BigInt;

use crate::algebra::{Polynomial, RationalFunction, Var};
use crate::error::{Error, Result};
use crate::formula::{Formula, RelOp};
use crate::symbols;
use crate::Rational;

/// Parses an arithmetic expression.
pub fn parse_expr(input: &str) -> Result<RationalFunction> {
    let mut p = Parser::new(input);
    let e = p.sum()?;
    p.expect_end()?;
    Ok(e)
}

/// Parses `lhs σ rhs` into its two sides and the relation symbol.
pub fn parse_relation(input: &str) -> Result<(RationalFunction, RelOp, RationalFunction)> {
    let mut p = Parser::new(input);
    let lhs = p.sum()?;
    let op = p
        .relop()?
        .ok_or_else(|| Error::parse(p.pos, "expected a relation symbol"))?;
    let rhs = p.sum()?;
    p.expect_end()?;
    Ok((lhs, op, rhs))
}

/// Parses a relation into the normalized atom `lhs - rhs σ 0`.
pub fn parse_relation_atom(input: &str) -> Result<Formula> {
    let (lhs, op, rhs) = parse_relation(input)?;
    Ok(Formula::atom(lhs.sub(&rhs), op))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src: src.as_bytes(),
            pos: 0,
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

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected `{}`", b as char)))
        }
    }

    fn expect_end(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(Error::parse(
                self.pos,
                format!("unexpected `{}` after expression", c as char),
            )),
        }
    }

    fn relop(&mut self) -> Result<Option<RelOp>> {
        let op = match self.peek() {
            Some(b'>') => {
                self.pos += 1;
                if self.src.get(self.pos) == Some(&b'=') {
                    self.pos += 1;
                    RelOp::Ge
                } else {
                    RelOp::Gt
                }
            }
            Some(b'<') => {
                self.pos += 1;
                if self.src.get(self.pos) == Some(&b'=') {
                    self.pos += 1;
                    RelOp::Le
                } else {
                    RelOp::Lt
                }
            }
            Some(b'=') => {
                self.pos += 1;
                RelOp::Eq
            }
            Some(b'!') => {
                self.pos += 1;
                if self.src.get(self.pos) == Some(&b'=') {
                    self.pos += 1;
                    RelOp::Ne
                } else {
                    return Err(Error::parse(self.pos, "expected `!=`"));
                }
            }
            _ => return Ok(None),
        };
        Ok(Some(op))
    }

    fn sum(&mut self) -> Result<RationalFunction> {
        let mut acc = self.product()?;
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.product()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.product()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<RationalFunction> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat(b'/') {
                let pos = self.pos;
                let rhs = self.unary()?;
                if rhs.is_zero() {
                    return Err(Error::parse(pos, "division by zero"));
                }
                acc = acc.div(&rhs)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunction> {
        if self.eat(b'-') {
            Ok(self.unary()?.neg())
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<RationalFunction> {
        let base = self.primary()?;
        if self.eat(b'^') {
            let pos = self.pos;
            if self.eat(b'-') {
                return Err(Error::parse(pos, "exponents must be non-negative integers"));
            }
            let e = self.integer()?;
            let e: u32 = e
                .try_into()
                .map_err(|_| Error::parse(pos, "exponent too large"))?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<RationalFunction> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.sum()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(RationalFunction::from_polynomial(Polynomial::constant(
                    Rational::from(n),
                )))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let name = self.identifier();
                match name.as_str() {
                    "sqrt" => {
                        let pos = self.pos;
                        self.expect(b'(')?;
                        let neg = self.eat(b'-');
                        let d = self.integer()?;
                        self.expect(b')')?;
                        let signed: i64 = if neg { -1 } else { 1 }
                            * i64::try_from(&d).map_err(|_| {
                                Error::parse(pos, "radicand out of range")
                            })?;
                        if signed <= 0 {
                            return Err(Error::InvalidRadicand(signed));
                        }
                        Ok(RationalFunction::variable(symbols::radical_var(
                            signed as u64,
                        )))
                    }
                    "s" if self.peek() == Some(b'(') => {
                        self.expect(b'(')?;
                        let inner = self.identifier();
                        if inner != symbols::FREE_TERM {
                            return Err(Error::parse(
                                self.pos,
                                "only s(x) is a valid shift application",
                            ));
                        }
                        self.expect(b')')?;
                        Ok(RationalFunction::variable(symbols::shifted_free_term()))
                    }
                    _ => Ok(RationalFunction::variable(Var::new(&name))),
                }
            }
            Some(c) => Err(Error::parse(
                self.pos,
                format!("unexpected character `{}`", c as char),
            )),
            None => Err(Error::parse(self.pos, "unexpected end of input")),
        }
    }

    fn identifier(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(self.pos, "expected an integer"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(text.parse().unwrap())
    }
}
