//! Text grammar for polynomials: `x0..x{n-1}`, integers, `+ - * ^`, parentheses.
//! Multiplication must be written explicitly; whitespace is ignored.

use crate::error::{Error, Result};
use crate::poly::{Polynomial, Ring};

pub fn parse_polynomial(ring: &Ring, text: &str) -> Result<Polynomial> {
    let mut p = Parser { ring, src: text.as_bytes(), pos: 0 };
    let f = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(f)
}

struct Parser<'a> {
    ring: &'a Ring,
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
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

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let e: u32 = e.try_into().map_err(|_| self.error("exponent too large"))?;
            if e > 255 {
                return Err(self.error("exponent too large"));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse::<u64>()
            .map_err(|_| Error::Parse { pos: start, msg: "integer too large".into() })
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'x') => {
                self.pos += 1;
                let start = self.pos;
                let idx = self.integer()? as usize;
                if idx >= self.ring.nvars() {
                    return Err(Error::Parse {
                        pos: start,
                        msg: format!("variable x{idx} outside ring of {} variables", self.ring.nvars()),
                    });
                }
                Ok(self.ring.var(idx))
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.integer()?;
                let p = self.ring.field().prime() as u64;
                Ok(self.ring.constant((v % p) as i64))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
