//! The scalar literal grammar used by every file format and the DSL:
//!
//! ```text
//! term    := (int | int "/" posint) ["*" "z^" exp]
//! literal := term {("+"|"-") term}
//! ```
//!
//! `z` denotes ζ_N for the contextual conductor N. The canonical rendering
//! lists terms by descending exponent, e.g. `-1/2*z^5+3`.

use super::{Cyc, Rat, ScalarError};
use alloc::string::{String, ToString};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Canonical rendering; parse(to_literal(c)) == c at the same conductor.
pub fn to_literal(c: &Cyc) -> String {
    if c.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (e, coef)) in c.terms().iter().rev().enumerate() {
        let neg = coef.is_negative();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push(if neg { '-' } else { '+' });
        }
        let num = coef.numer().abs();
        let den = coef.denom();
        out.push_str(&num.to_string());
        if !den.is_one() {
            out.push('/');
            out.push_str(&den.to_string());
        }
        if *e != 0 {
            out.push_str("*z^");
            out.push_str(&e.to_string());
        }
    }
    out
}

struct Lexer<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(s: &'a str) -> Self {
        Lexer { bytes: s.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && (self.bytes[self.pos] as char).is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn err(&self, msg: &str) -> ScalarError {
        ScalarError::Parse { offset: self.pos, msg: msg.to_string() }
    }

    fn integer(&mut self) -> Result<BigInt, ScalarError> {
        self.skip_ws();
        let start = self.pos;
        if self.bytes.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(self.err("expected integer"));
        }
        let s = core::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        s.parse::<BigInt>().map_err(|_| self.err("invalid integer"))
    }
}

/// Parses a literal at the given conductor.
pub fn parse_literal(s: &str, conductor: u32) -> Result<Cyc, ScalarError> {
    let mut lx = Lexer::new(s);
    let mut acc = Cyc::zero();
    let mut first = true;
    loop {
        let sign = if first {
            first = false;
            match lx.peek() {
                Some(b'-') => {
                    lx.bump();
                    -1
                }
                Some(b'+') => {
                    lx.bump();
                    1
                }
                _ => 1,
            }
        } else {
            match lx.bump() {
                Some(b'+') => 1,
                Some(b'-') => -1,
                Some(_) => return Err(lx.err("expected '+' or '-'")),
                None => break,
            }
        };
        let num = lx.integer()?;
        let den = if lx.peek() == Some(b'/') {
            lx.bump();
            let d = lx.integer()?;
            if !d.is_positive() {
                return Err(lx.err("denominator must be positive"));
            }
            d
        } else {
            BigInt::one()
        };
        let exp = if lx.peek() == Some(b'*') {
            lx.bump();
            if lx.bump() != Some(b'z') {
                return Err(lx.err("expected 'z'"));
            }
            if lx.bump() != Some(b'^') {
                return Err(lx.err("expected '^'"));
            }
            let e = lx.integer()?;
            if e.is_negative() {
                return Err(lx.err("exponent must be nonnegative"));
            }
            let e_u: u64 = e.try_into().map_err(|_| lx.err("exponent too large"))?;
            (e_u % conductor as u64) as u32
        } else {
            0
        };
        let coef = Rat::new(num * BigInt::from(sign), den);
        if !coef.is_zero() {
            acc = acc.try_add(&Cyc::monomial(conductor, exp, coef))?;
        }
        if lx.peek().is_none() {
            break;
        }
    }
    lx.skip_ws();
    if lx.pos != lx.bytes.len() {
        return Err(lx.err("trailing input"));
    }
    Ok(acc)
}

/// Parses a literal that must be conductor-free (a plain rational).
pub fn parse_rational(s: &str) -> Result<Rat, ScalarError> {
    let c = parse_literal(s, 1)?;
    c.as_rat().ok_or(ScalarError::Parse { offset: 0, msg: "expected rational".to_string() })
}
