//! Text grammar for elements:
//!
//! ```text
//! expr     := ['-'] term (('+'|'-') term)*
//! term     := rational ('*' monomial)? | monomial
//! monomial := gen ('*' gen)*
//! gen      := identifier ('^' int)?
//! rational := int ('/' int)?
//! ```
//!
//! Example: `3*x1*x2 - 1/2*a^2*y`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::grade::{Element, GradedAlgebra};
use crate::qlin::Rational;

/// Parses `text` as an element of `alg`.
pub fn parse_element(text: &str, alg: &Arc<GradedAlgebra>) -> Result<Element> {
    let mut p = Parser {
        src: text,
        pos: 0,
        alg,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.syntax("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    alg: &'a Arc<GradedAlgebra>,
}

impl Parser<'_> {
    fn syntax(&self, message: &str) -> Error {
        let before = &self.src[..self.pos];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Error::Syntax {
            line,
            column,
            message: message.to_string(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
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

    fn expr(&mut self) -> Result<Element> {
        let mut acc = Element::zero(self.alg);
        let mut negate = self.eat('-');
        loop {
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            if self.eat('+') {
                negate = false;
            } else if self.eat('-') {
                negate = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Element> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let c = self.rational()?;
                if self.eat('*') {
                    Ok(self.monomial()?.scale(&c))
                } else {
                    Ok(Element::scalar(self.alg, c))
                }
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => self.monomial(),
            Some(_) => Err(self.syntax("expected a coefficient or a generator")),
            None => Err(self.syntax("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.syntax("expected an integer"));
        }
        Ok(self.src[start..self.pos].parse().expect("digits parse"))
    }

    fn rational(&mut self) -> Result<Rational> {
        let num = self.integer()?;
        if self.eat('/') {
            let at = self.pos;
            let den = self.integer()?;
            if den.is_zero() {
                self.pos = at;
                return Err(self.syntax("zero denominator"));
            }
            Ok(Rational::new(num, den))
        } else {
            Ok(Rational::from_integer(num))
        }
    }

    fn monomial(&mut self) -> Result<Element> {
        let mut acc = self.power()?;
        while self.eat('*') {
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Element> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
            _ => return Err(self.syntax("expected a generator name")),
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        let name = &self.src[start..self.pos];
        let Some(i) = self.alg.index_of(name) else {
            return Err(Error::UnknownGenerator(name.to_string()));
        };
        let g = Element::generator(self.alg, name)?;
        if !self.eat('^') {
            return Ok(g);
        }
        let e = self.integer()?;
        let e: u32 = e
            .try_into()
            .map_err(|_| self.syntax("exponent out of range"))?;
        if e > 1 && self.alg.is_odd(i) {
            return Err(Error::OddPower(name.to_string()));
        }
        if e == 0 {
            return Ok(Element::scalar(self.alg, Rational::one()));
        }
        Ok(g.pow(e))
    }
}
