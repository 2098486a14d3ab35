//! A small recursive-descent parser for ring element literals such as
//! `-2`, `3/4`, `(delta^2-1)/delta` or `2*delta+1`.

use num::BigInt;

use super::{RingElement, RingSpec};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigInt),
    Delta,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1
            }
            '-' => {
                out.push(Token::Minus);
                i += 1
            }
            '*' => {
                out.push(Token::Star);
                i += 1
            }
            '/' => {
                out.push(Token::Slash);
                i += 1
            }
            '^' => {
                out.push(Token::Caret);
                i += 1
            }
            '(' => {
                out.push(Token::LParen);
                i += 1
            }
            ')' => {
                out.push(Token::RParen);
                i += 1
            }
            'δ' => {
                out.push(Token::Delta);
                i += 1
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let lit: String = chars[start..i].iter().collect();
                out.push(Token::Int(lit.parse().expect("digits")));
            }
            a if a.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_alphabetic() {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                if word == "delta" {
                    out.push(Token::Delta);
                } else {
                    return Err(Error::Parse(format!("unknown symbol {word:?} in {s:?}")));
                }
            }
            other => return Err(Error::Parse(format!("unexpected {other:?} in {s:?}"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    ring: &'a RingSpec,
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} in {:?}", self.src))
    }

    fn expr(&mut self) -> Result<RingElement> {
        let mut acc = self.term()?;
        while let Some(t) = self.peek() {
            match t {
                Token::Plus => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Token::Minus => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RingElement> {
        let mut acc = self.unary()?;
        while let Some(t) = self.peek() {
            match t {
                Token::Star => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Token::Slash => {
                    self.pos += 1;
                    let d = self.unary()?;
                    acc = acc
                        .checked_div(&d)
                        .ok_or_else(|| Error::NotInvertible(format!("{d} in {}", self.ring)))?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RingElement> {
        if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<RingElement> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            let negative = if self.peek() == Some(&Token::Minus) {
                self.pos += 1;
                true
            } else {
                false
            };
            let e: u32 = match self.next() {
                Some(Token::Int(n)) => n.try_into().map_err(|_| self.err("exponent too large"))?,
                _ => return Err(self.err("expected an exponent")),
            };
            let p = base.pow(e);
            return if negative {
                p.inverse()
                    .ok_or_else(|| Error::NotInvertible(format!("{base} in {}", self.ring)))
            } else {
                Ok(p)
            };
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RingElement> {
        match self.next() {
            Some(Token::Int(n)) => Ok(self.ring.from_bigint(&n)),
            Some(Token::Delta) => self
                .ring
                .delta()
                .ok_or_else(|| self.err(&format!("delta is not an element of {}", self.ring))),
            Some(Token::LParen) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Token::RParen) => Ok(e),
                    _ => Err(self.err("expected ')'")),
                }
            }
            _ => Err(self.err("expected a number, delta or '('")),
        }
    }
}

pub(super) fn parse_element(ring: &RingSpec, s: &str) -> Result<RingElement> {
    let tokens = tokenize(s)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty ring element".into()));
    }
    let mut p = Parser {
        tokens,
        pos: 0,
        ring,
        src: s,
    };
    let e = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integer_and_fraction_literals() {
        let q = RingSpec::Rational;
        assert_eq!(q.parse_element("-2").unwrap(), q.from_int(-2));
        let half = q.parse_element("1/2").unwrap();
        assert_eq!(&half + &half, q.one());
        let f5 = RingSpec::prime_field(5).unwrap();
        assert_eq!(f5.parse_element("-2").unwrap(), f5.from_int(3));
        assert_eq!(f5.parse_element("1/2").unwrap(), f5.from_int(3));
        assert!(f5.parse_element("1/5").is_err());
        assert!(RingSpec::Integers.parse_element("1/2").is_err());
    }

    #[test]
    fn delta_only_in_delta_rings() {
        assert!(RingSpec::Rational.parse_element("delta").is_err());
        let qd = RingSpec::RationalFunctionDelta;
        let d = qd.delta().unwrap();
        assert_eq!(qd.parse_element("-delta").unwrap(), -&d);
        assert_eq!(qd.parse_element("δ^2 - 1").unwrap(), &(&d * &d) - &qd.one());
        assert_eq!(
            qd.parse_element("delta^-1").unwrap(),
            qd.one().checked_div(&d).unwrap()
        );
        assert!(qd.parse_element("delta)").is_err());
        assert!(qd.parse_element("x").is_err());
    }
}
