//! Text form of polynomials.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! poly   := ["+"|"-"] term (("+"|"-") term)*
//! term   := int | [int "*"] factor ("*" factor)*
//! factor := name ["^" int]
//! ```
//!
//! Printing uses symmetric representatives in `(-p/2, p/2]` and omits unit
//! coefficients, so `parse(print(f)) == f`.

use std::fmt::Write;
use std::sync::Arc;

use super::monomial::{Monomial, MAX_VARS};
use super::poly::Polynomial;
use super::ring::PolyRing;
use crate::error::{Error, Result};

pub fn parse(text: &str, ring: &Arc<PolyRing>) -> Result<Polynomial> {
    Parser::new(text, ring).poly()
}

/// Like [`parse`] but rejects inhomogeneous input.
pub fn parse_homogeneous(text: &str, ring: &Arc<PolyRing>) -> Result<Polynomial> {
    let f = parse(text, ring)?;
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    Ok(f)
}

pub fn print(f: &Polynomial) -> String {
    let ring = f.ring();
    let fld = ring.field();
    if f.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (m, c)) in f.terms().iter().enumerate() {
        let s = fld.to_signed(*c);
        let (neg, a) = (s < 0, s.unsigned_abs());
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if m.is_one() {
            write!(out, "{a}").unwrap();
            continue;
        }
        if a != 1 {
            write!(out, "{a}*").unwrap();
        }
        out.push_str(&print_monomial(m, ring));
    }
    out
}

pub fn print_monomial(m: &Monomial, ring: &PolyRing) -> String {
    if m.is_one() {
        return "1".into();
    }
    let mut parts = Vec::new();
    for i in 0..ring.nvars() {
        match m.exp(i) {
            0 => {}
            1 => parts.push(ring.name(i).to_string()),
            e => parts.push(format!("{}^{e}", ring.name(i))),
        }
    }
    parts.join("*")
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Arc<PolyRing>,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, ring: &'a Arc<PolyRing>) -> Self {
        Parser {
            src: text.as_bytes(),
            pos: 0,
            ring,
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            position: self.pos,
            message: message.into(),
        })
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

    fn poly(&mut self) -> Result<Polynomial> {
        let fld = self.ring.field();
        let mut terms: Vec<(Monomial, u32)> = Vec::new();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            None => return self.err("empty polynomial"),
            _ => false,
        };
        loop {
            let (m, c) = self.term()?;
            terms.push((m, if sign { fld.neg(c) } else { c }));
            match self.peek() {
                None => break,
                Some(b'+') => sign = false,
                Some(b'-') => sign = true,
                Some(ch) => return self.err(format!("unexpected `{}`", ch as char)),
            }
            self.pos += 1;
        }
        Ok(Polynomial::from_terms(self.ring, terms))
    }

    fn term(&mut self) -> Result<(Monomial, u32)> {
        let fld = self.ring.field();
        let mut coeff = 1u32;
        let mut exps = [0u32; MAX_VARS];
        let mut need_factor = true;
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            coeff = self.integer_mod_p()?;
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                need_factor = false;
            }
        }
        if need_factor {
            loop {
                let name = self.ident()?;
                let Some(idx) = self.ring.var_index(&name) else {
                    return Err(Error::UnknownVariable(name));
                };
                let mut e = 1u32;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    e = self.small_integer()?;
                }
                exps[idx] += e;
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    // allow a numeric factor after a variable, e.g. x0*3
                    if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                        coeff = fld.mul(coeff, self.integer_mod_p()?);
                        if self.peek() != Some(b'*') {
                            break;
                        }
                        self.pos += 1;
                    }
                } else {
                    break;
                }
            }
        }
        let m = Monomial::from_exponents(&exps[..self.ring.nvars()])?;
        Ok((m, coeff))
    }

    fn digits(&mut self) -> Result<&'a [u8]> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        Ok(&self.src[start..self.pos])
    }

    fn integer_mod_p(&mut self) -> Result<u32> {
        let p = self.ring.characteristic() as u64;
        let mut acc = 0u64;
        for &d in self.digits()? {
            acc = (acc * 10 + (d - b'0') as u64) % p;
        }
        Ok(acc as u32)
    }

    fn small_integer(&mut self) -> Result<u32> {
        let start = self.pos;
        let mut acc = 0u32;
        for &d in self.digits()? {
            acc = match acc.checked_mul(10).and_then(|a| a.checked_add((d - b'0') as u32)) {
                Some(a) if a <= u8::MAX as u32 => a,
                _ => {
                    self.pos = start;
                    return Err(Error::ExponentOverflow);
                }
            };
        }
        Ok(acc)
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        if !matches!(self.src.get(self.pos), Some(c) if c.is_ascii_alphabetic() || *c == b'_') {
            return self.err("expected variable name");
        }
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r() -> Arc<PolyRing> {
        PolyRing::p7()
    }

    #[test]
    fn parses_binomial() {
        let f = parse("x0*x3 - x1*x2", &r()).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(print(&f), "-x1*x2 + x0*x3");
    }

    #[test]
    fn reduces_modulo_p() {
        let f = parse("x0^2 + 32003*x1^2", &r()).unwrap();
        assert_eq!(print(&f), "x0^2");
        assert_eq!(print(&parse("32004 * x1", &r()).unwrap()), "x1");
        assert_eq!(print(&parse("x0 - x0", &r()).unwrap()), "0");
    }

    #[test]
    fn whitespace_and_signs() {
        let f = parse("  - 3 * x0 ^ 2*x1 +x2^3-1*x7 ^3 ", &r()).unwrap();
        assert_eq!(print(&f), "-3*x0^2*x1 + x2^3 - x7^3");
    }

    #[test]
    fn reports_errors() {
        assert_eq!(parse("x0 + y9", &r()), Err(Error::UnknownVariable("y9".into())));
        assert!(matches!(parse("x0 + ", &r()), Err(Error::Syntax { position: 5, .. })));
        assert!(matches!(parse("x0 ** x1", &r()), Err(Error::Syntax { .. })));
        assert_eq!(parse("x0^300", &r()), Err(Error::ExponentOverflow));
        assert_eq!(parse_homogeneous("x0^2 + x1", &r()), Err(Error::NotHomogeneous));
        assert!(parse("", &r()).is_err());
    }

    #[test]
    fn custom_names() {
        let ring = PolyRing::new(&["z11", "z12", "y33"], 32003, crate::algebra::MonomialOrder::Grevlex).unwrap();
        let f = parse("z11*y33 - 2*z12^2", &ring).unwrap();
        assert_eq!(print(&f), "-2*z12^2 + z11*y33");
    }

    #[test]
    fn constant_terms() {
        let f = parse("7 + x0 - 7", &r()).unwrap();
        assert_eq!(print(&f), "x0");
        assert_eq!(print(&parse("-16002", &r()).unwrap()), "16001");
    }

    fn arb_term() -> impl Strategy<Value = (i64, Vec<u32>)> {
        (-40000i64..40000, proptest::collection::vec(0u32..4, 8))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn print_parse_round_trip(terms in proptest::collection::vec(arb_term(), 0..6)) {
            let ring = r();
            let f = Polynomial::from_exponents(&ring, &terms).unwrap();
            let text = print(&f);
            prop_assert_eq!(parse(&text, &ring).unwrap(), f);
        }
    }
}
