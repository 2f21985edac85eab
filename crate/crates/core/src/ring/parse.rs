//! Parser for the canonical string form of polynomials and fractions.

use num_bigint::BigInt;

use super::monomial::Var;
use super::rational::QtRational;
use crate::error::{Error, Result};

/// Parses expressions such as `(1 - q)/(1 - q*t)` or `3*q^2*u0^-1 + t`.
pub fn parse_rational(s: &str) -> Result<QtRational> {
    let tokens = tokenize(s)?;
    let mut p = Parser { tokens, pos: 0 };
    let v = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse(format!("trailing input in {s:?}")));
    }
    Ok(v)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Tok::Num(text.parse().map_err(|_| Error::Parse(text.clone()))?));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<QtRational> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<QtRational> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                acc = acc.checked_div(&d)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<QtRational> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        let base = self.atom()?;
        if self.eat('^') {
            let neg = self.eat('-');
            let k = match self.tokens.get(self.pos) {
                Some(Tok::Num(n)) => {
                    let k: i32 = n.try_into().map_err(|_| Error::Parse("exponent too large".into()))?;
                    self.pos += 1;
                    k
                }
                _ => return Err(Error::Parse("expected exponent".into())),
            };
            return base.pow(if neg { -k } else { k });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<QtRational> {
        match self.tokens.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(QtRational::from_integer(n))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let v = Var::parse(&name).ok_or_else(|| Error::Parse(format!("unknown variable {name}")))?;
                Ok(QtRational::var(v))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                Ok(v)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_canonical_strings() {
        for s in ["0", "1", "1 - q + t - q*t", "(1 - q)/(1 - q*t)", "(-1 + t)/(1 - q)", "(1)/(q*u0^2)", "1 + 3*q^2 - q*t^2"] {
            assert_eq!(parse_rational(s).unwrap().render(), s);
        }
    }

    #[test]
    fn negative_exponents() {
        assert_eq!(parse_rational("q^-1").unwrap().render(), "(1)/(q)");
        assert_eq!(parse_rational("2*t^-2 - 1").unwrap().render(), "(2 - t^2)/(t^2)");
    }
}
