//! Parser for the display form: integers, variable names, `+ - * ^`,
//! parentheses, and signed integer exponents (`x^-1`, `x^(-2)`).

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;

use num_bigint::BigInt;

use super::{LaurentError, LaurentPoly, VarTable};

pub fn parse(table: &Arc<VarTable>, src: &str) -> Result<LaurentPoly, LaurentError> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        table,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    table: &'a Arc<VarTable>,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> LaurentError {
        LaurentError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<LaurentPoly, LaurentError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc.try_add(&self.term()?)?;
            } else if self.eat(b'-') {
                acc = acc.try_sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPoly, LaurentError> {
        let mut acc = self.unary()?;
        while self.eat(b'*') {
            acc = acc.try_mul(&self.unary()?)?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<LaurentPoly, LaurentError> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<LaurentPoly, LaurentError> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let start = self.pos;
        let e = if self.eat(b'(') {
            let e = self.signed_int()?;
            if !self.eat(b')') {
                return Err(self.error("expected `)` after exponent"));
            }
            e
        } else {
            self.signed_int()?
        };
        base.pow_signed(e).map_err(|err| match err {
            LaurentError::NonUnitInverse(_) => LaurentError::Parse {
                pos: start,
                msg: format!("negative power of non-unit `{base}`"),
            },
            other => other,
        })
    }

    fn signed_int(&mut self) -> Result<i32, LaurentError> {
        let neg = self.eat(b'-');
        let digits = self.digits();
        if digits.is_empty() {
            return Err(self.error("expected integer exponent"));
        }
        let v: i32 = digits.parse().map_err(|_| self.error("exponent out of range"))?;
        Ok(if neg { -v } else { v })
    }

    fn digits(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<LaurentPoly, LaurentError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits();
                let n: BigInt = d.parse().map_err(|_| self.error("bad integer"))?;
                Ok(LaurentPoly::constant(self.table, n))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len() {
                    let c = self.src[self.pos];
                    if c.is_ascii_alphanumeric() || c == b'_' || c == b'\'' {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                let name = core::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                LaurentPoly::var(self.table, name)
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
