//! Expression syntax for elements.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom '\''*
//! atom   := scalar | radical | 'I' | 'S[' word ';' word ']' | '(' expr ')'
//! scalar := digits ['/' digits] ['i']
//! radical:= digits '^(' ['-'] digits ['/' digits] ')'
//! word   := 'id' | letter ('.' letter)*
//! ```
//!
//! Printed elements parse back to the same element.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::algebra::Element;
use crate::error::{Error, Result};
use crate::scalar::{ExactScalar, Exponent, Gaussian, Rational};
use crate::semigroup::{parse_word, Permutation2D};

pub fn parse_expression(src: &str, theta: &Arc<Permutation2D>) -> Result<Element> {
    let mut p = Parser { src, pos: 0, theta };
    let x = p.expr()?;
    p.skip_ws();
    if p.pos < src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(x)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    theta: &'a Arc<Permutation2D>,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{c}`")))
        }
    }

    fn expr(&mut self) -> Result<Element> {
        let negate = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            if self.eat('+') {
                acc = acc.try_add(&self.term()?)?;
            } else if self.eat('-') {
                acc = acc.try_sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Element> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = acc.try_mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Element> {
        let mut x = self.atom()?;
        while self.eat('\'') {
            x = x.adjoint();
        }
        Ok(x)
    }

    fn atom(&mut self) -> Result<Element> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let x = self.expr()?;
                self.expect(')')?;
                Ok(x)
            }
            Some('I') => {
                self.pos += 1;
                Ok(Element::identity(self.theta))
            }
            Some('S') => self.generator(),
            Some(c) if c.is_ascii_digit() => self.number(),
            Some(_) => Err(self.error("expected a scalar, `I`, `S[…;…]` or `(`")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..]
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(self.src.len() - start);
        if len == 0 {
            return Err(self.error("expected digits"));
        }
        self.pos += len;
        self.src[start..self.pos].parse().map_err(|_| Error::Syntax {
            pos: start,
            msg: "bad integer".into(),
        })
    }

    fn number(&mut self) -> Result<Element> {
        let start = self.pos;
        let num = self.digits()?;
        if self.src[self.pos..].starts_with("^(") {
            self.pos += 2;
            let negative = self.eat('-');
            let top = self.digits()?;
            let bottom = if self.eat('/') { self.digits()? } else { BigInt::from(1) };
            self.expect(')')?;
            let small = |b: &BigInt| {
                i64::try_from(b).map_err(|_| Error::Syntax {
                    pos: start,
                    msg: "exponent too large".into(),
                })
            };
            let base = u64::try_from(&num).map_err(|_| Error::Syntax {
                pos: start,
                msg: "radical base too large".into(),
            })?;
            let (top, bottom) = (small(&top)?, small(&bottom)?);
            if base == 0 || bottom == 0 {
                return Err(Error::Syntax {
                    pos: start,
                    msg: "radical needs a positive base and denominator".into(),
                });
            }
            let r = Exponent::new(if negative { -top } else { top }, bottom);
            return Ok(Element::scalar(self.theta, ExactScalar::radical(base, r)));
        }
        let den = if self.src[self.pos..].starts_with('/') {
            self.pos += 1;
            self.digits()?
        } else {
            BigInt::from(1)
        };
        if den == BigInt::from(0) {
            return Err(Error::Syntax {
                pos: start,
                msg: "zero denominator".into(),
            });
        }
        let r = Rational::new(num, den);
        let g = if self.src[self.pos..].starts_with('i') {
            self.pos += 1;
            Gaussian::new(Rational::from_integer(0.into()), r)
        } else {
            Gaussian::from_rational(r)
        };
        Ok(Element::scalar(self.theta, ExactScalar::from_gaussian(g)))
    }

    fn generator(&mut self) -> Result<Element> {
        if !self.src[self.pos..].starts_with("S[") {
            return Err(self.error("expected `S[`"));
        }
        self.pos += 2;
        let u = self.word(';')?;
        self.expect(';')?;
        let v = self.word(']')?;
        self.expect(']')?;
        Ok(Element::generator(self.theta, u, v))
    }

    fn word(&mut self, end: char) -> Result<crate::semigroup::Word> {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..]
            .find([end, ';', ']'])
            .unwrap_or(self.src.len() - start);
        let text = self.src[start..start + len].trim();
        if text.is_empty() {
            return Err(self.error("expected a word"));
        }
        self.pos += len;
        parse_word(self.theta, text).map_err(|e| match e {
            Error::IndexOutOfRange(_) => e,
            other => Error::Syntax {
                pos: start,
                msg: other.to_string(),
            },
        })
    }
}
