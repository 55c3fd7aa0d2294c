//! Parser for the textual polynomial grammar.
//!
//! ```text
//! poly   := ['-'] term (('+'|'-') term)*
//! term   := coeff | coeff '*' factors | factors
//! factors:= factor ('*' factor)*
//! factor := var ['^' nat]
//! var    := 'x[' nat ',' nat ']' | 't[' nat ']'
//! coeff  := nat | nat '/' nat          (the '/' form only over the rationals)
//! ```
//!
//! ASCII whitespace between tokens is accepted on input; the canonical
//! formatter never emits it.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, Variable};
use crate::poly::Polynomial;
use crate::ring::{Coeff, CoefficientRing};

/// Parse `text` into a normalized polynomial over `ring` with row bound `rows`.
pub fn parse_polynomial(text: &str, ring: CoefficientRing, rows: u16) -> Result<Polynomial> {
    Parser {
        bytes: text.as_bytes(),
        pos: 0,
        ring,
        rows,
    }
    .parse()
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    ring: CoefficientRing,
    rows: u16,
}

impl<'a> Parser<'a> {
    fn parse(mut self) -> Result<Polynomial> {
        let mut poly = Polynomial::zero(self.ring, self.rows)?;
        self.skip_ws();
        let mut negate = self.eat(b'-');
        loop {
            let (monomial, coeff) = self.term()?;
            let coeff = if negate { self.ring.neg(&coeff) } else { coeff };
            poly = poly.try_add(&Polynomial::from_terms(
                self.ring,
                self.rows,
                [(monomial, coeff)],
            )?)?;
            self.skip_ws();
            if self.eat(b'+') {
                negate = false;
            } else if self.eat(b'-') {
                negate = true;
            } else {
                break;
            }
        }
        self.skip_ws();
        if self.pos != self.bytes.len() {
            return Err(self.syntax("unexpected trailing input"));
        }
        Ok(poly)
    }

    fn term(&mut self) -> Result<(Monomial, Coeff)> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let coeff = self.coeff()?;
                self.skip_ws();
                if self.eat(b'*') {
                    let m = self.factors()?;
                    Ok((m, coeff))
                } else {
                    Ok((Monomial::one(), coeff))
                }
            }
            Some(b'x') | Some(b't') => Ok((self.factors()?, self.ring.one())),
            _ => Err(self.syntax("expected a coefficient or a variable")),
        }
    }

    fn factors(&mut self) -> Result<Monomial> {
        let mut m = self.factor()?;
        loop {
            self.skip_ws();
            let save = self.pos;
            if !self.eat(b'*') {
                break;
            }
            self.skip_ws();
            match self.peek() {
                Some(b'x') | Some(b't') => {
                    m = m.mul(&self.factor()?).map_err(|e| self.lift(e))?;
                }
                _ => {
                    // A '*' not followed by a variable belongs to no factor.
                    self.pos = save;
                    break;
                }
            }
        }
        Ok(m)
    }

    fn factor(&mut self) -> Result<Monomial> {
        let v = self.variable()?;
        self.skip_ws();
        let e = if self.eat(b'^') {
            self.skip_ws();
            self.nat_u32("exponent")?
        } else {
            1
        };
        Monomial::from_exps([(v, e)]).map_err(|e| self.lift(e))
    }

    fn variable(&mut self) -> Result<Variable> {
        self.skip_ws();
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                self.expect(b'[')?;
                let row = self.nat_u32("row index")?;
                self.expect(b',')?;
                let col = self.nat_u32("column index")?;
                self.expect(b']')?;
                if row == 0 || col == 0 {
                    return Err(self.lift(Error::ZeroIndex));
                }
                if row > self.rows as u32 {
                    return Err(Error::RowOutOfBounds {
                        row: row.min(u16::MAX as u32) as u16,
                        bound: self.rows,
                    });
                }
                Ok(Variable::X {
                    row: row as u16,
                    col,
                })
            }
            Some(b't') => {
                self.pos += 1;
                self.expect(b'[')?;
                let col = self.nat_u32("column index")?;
                self.expect(b']')?;
                if col == 0 {
                    return Err(self.lift(Error::ZeroIndex));
                }
                Ok(Variable::T { col })
            }
            _ => Err(self.syntax("expected a variable")),
        }
    }

    fn coeff(&mut self) -> Result<Coeff> {
        let numer = self.nat_bigint()?;
        self.skip_ws();
        let save = self.pos;
        if self.eat(b'/') {
            self.skip_ws();
            if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                let denom = self.nat_bigint()?;
                return self.ring.from_ratio(numer, denom).map_err(|e| match e {
                    Error::Parse { message, .. } => self.syntax(&message),
                    other => other,
                });
            }
            self.pos = save;
        }
        Ok(self.ring.from_bigint(numer))
    }

    fn nat_bigint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.syntax("expected a number"));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(text.parse().unwrap())
    }

    fn nat_u32(&mut self, what: &str) -> Result<u32> {
        let n = self.nat_bigint()?;
        u32::try_from(n).map_err(|_| self.syntax(&format!("{what} too large")))
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
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
            Err(self.syntax(&format!("expected '{}'", b as char)))
        }
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ') | Some(b'\t')) {
            self.pos += 1;
        }
    }

    fn syntax(&self, message: &str) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.into(),
        }
    }

    /// Attach the current position to structural errors raised mid-parse.
    fn lift(&self, e: Error) -> Error {
        match e {
            Error::Parse { .. } => e,
            other => Error::Parse {
                position: self.pos,
                message: other.to_string(),
            },
        }
    }
}
