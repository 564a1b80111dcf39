//! Plain-text expression grammar for scalars, used by the CLI config.
//!
//! ```text
//! expr    := term { ("+" | "-") term }
//! term    := unary { ("*" | "/") unary }
//! unary   := "-" unary | factor
//! factor  := atom [ "^" signed_int ]
//! atom    := integer | "i" | variable | "(" expr ")"
//! integer := digit+
//! signed  := ["-"] digit+
//! variable:= letter { letter | digit | "_" }   -- "i" is reserved for the imaginary unit
//! ```
//!
//! Whitespace is insignificant. Exponents are signed integers (Laurent
//! exponents are first-class). The same EBNF is documented in the repository
//! README.

use crate::error::{Error, Result};
use crate::field::gaussian::GaussianRational;
use crate::field::scalar::Scalar;

pub fn parse_scalar(input: &str) -> Result<Scalar> {
    let mut p = Parser { chars: input.chars().collect(), pos: 0 };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(Error::Parse(format!("unexpected input at byte {}: `{}`", p.pos, p.rest())));
    }
    Ok(value)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn rest(&self) -> String {
        self.chars[self.pos..].iter().collect()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                acc = acc.div(&self.unary()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<Scalar> {
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.signed_int()?;
            return base.pow(e);
        }
        Ok(base)
    }

    fn signed_int(&mut self) -> Result<i64> {
        self.skip_ws();
        let neg = self.peek() == Some('-');
        if neg {
            self.pos += 1;
        }
        let digits = self.digits()?;
        let n: i64 = digits.parse().map_err(|_| Error::Parse(format!("integer out of range: {digits}")))?;
        Ok(if neg { -n } else { n })
    }

    fn digits(&mut self) -> Result<String> {
        self.skip_ws();
        let mut s = String::new();
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            s.push(self.bump().unwrap());
        }
        if s.is_empty() {
            return Err(Error::Parse(format!("expected digits at `{}`", self.rest())));
        }
        Ok(s)
    }

    fn atom(&mut self) -> Result<Scalar> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse(format!("missing `)` at `{}`", self.rest())));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits()?;
                let n: i64 =
                    digits.parse().map_err(|_| Error::Parse(format!("integer out of range: {digits}")))?;
                Ok(Scalar::from_int(n))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let mut name = String::new();
                while matches!(self.peek(), Some(c) if c.is_alphanumeric() || c == '_') {
                    name.push(self.bump().unwrap());
                }
                if name == "i" {
                    Ok(Scalar::constant(GaussianRational::i()))
                } else {
                    Ok(Scalar::var(&name))
                }
            }
            _ => Err(Error::Parse(format!("expected an atom at `{}`", self.rest()))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::monomial::Monomial;

    #[test]
    fn parses_kernel_entry() {
        let b = parse_scalar("(u - u^-1) / (u*q - u^-1*q^-1)").unwrap();
        let num = Scalar::mono_minus_inv(&Monomial::var("u"));
        let den = Scalar::mono_minus_inv(&Monomial::var("u").mul(&Monomial::var("q")));
        assert_eq!(b, num.div(&den).unwrap());
    }

    #[test]
    fn imaginary_unit_and_precedence() {
        let z = parse_scalar("i*i + 1").unwrap();
        assert!(z.is_zero());
        let w = parse_scalar("2 + 3 * 4").unwrap();
        assert_eq!(w, Scalar::from_int(14));
        let neg = parse_scalar("-u^2").unwrap();
        assert_eq!(neg, Scalar::from_monomial(&Monomial::var_pow("u", 2)).neg());
    }

    #[test]
    fn rejects_trailing_garbage() {
        assert!(parse_scalar("u + ").is_err());
        assert!(parse_scalar("(u").is_err());
        assert!(parse_scalar("u )").is_err());
    }

    #[test]
    fn division_by_zero_detected() {
        assert!(matches!(parse_scalar("1/(u - u)"), Err(Error::DivisionByZero)));
    }
}
