//! Text grammar for polynomials:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | power
//! power  := atom ('^' integer)?
//! atom   := integer ('/' integer)? | 'x_' integer '_' integer | '(' expr ')'
//! ```
//!
//! Whitespace is ignored between tokens. Variable indices are 1-based.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::Polynomial;
use crate::error::{Error, Result};

pub fn parse(text: &str, n: usize, d: usize) -> Result<Polynomial> {
    if n == 0 || d == 0 {
        return Err(Error::InvalidArgument("n and d must be at least 1".into()));
    }
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        n,
        d,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(out)
}

/// Parse a rational literal such as `3`, `-7/2`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let err = || Error::Parse {
        pos: 0,
        msg: format!("invalid rational literal {t:?}"),
    };
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None if t.contains(['.', 'e', 'E']) => return parse_decimal(t).ok_or_else(err),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err())?;
    let den: BigInt = den.parse().map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(BigRational::new(num, den))
}

/// `[-]digits[.digits][e[-]digits]`, read exactly.
fn parse_decimal(t: &str) -> Option<BigRational> {
    let (mantissa, exp) = match t.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().ok()?),
        None => (t, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("0{int}{frac}").parse().ok()?;
    let shift = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let scale = num_traits::pow(ten, shift.unsigned_abs() as usize);
    let value = if shift >= 0 {
        BigRational::from_integer(digits * scale)
    } else {
        BigRational::new(digits, scale)
    };
    Some(if neg { -value } else { value })
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n: usize,
    d: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse {
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

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
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

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        if self.eat(b'-') {
            return Ok(-self.factor()?);
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let e = self.unsigned()?;
            let e = u32::try_from(e).map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn unsigned(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| Error::Parse {
                pos: start,
                msg: "integer out of range".into(),
            })
    }

    fn big_unsigned(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .expect("digits parse as BigInt"))
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.big_unsigned()?;
                let mut den = BigInt::from(1);
                if self.eat(b'/') {
                    self.skip_ws();
                    den = self.big_unsigned()?;
                    if den.is_zero() {
                        return Err(self.error("zero denominator"));
                    }
                }
                Ok(Polynomial::constant(self.n, self.d, BigRational::new(num, den)))
            }
            Some(b'x') => {
                self.pos += 1;
                if self.src.get(self.pos) != Some(&b'_') {
                    return Err(self.error("expected '_' after 'x'"));
                }
                self.pos += 1;
                let i = self.unsigned()? as usize;
                if self.src.get(self.pos) != Some(&b'_') {
                    return Err(self.error("expected '_' between variable indices"));
                }
                self.pos += 1;
                let j = self.unsigned()? as usize;
                if i == 0 || j == 0 || i > self.n || j > self.d {
                    return Err(Error::VariableOutOfRange {
                        i,
                        j,
                        n: self.n,
                        d: self.d,
                    });
                }
                Ok(Polynomial::var(self.n, self.d, i - 1, j - 1))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
