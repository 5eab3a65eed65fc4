//! Recursive-descent parser for the polynomial text grammar.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*        divisor must be a nonzero constant
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | identifier | E[...] | '(' expr ')'
//! ```

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{Polynomial, Rational, VarRing};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { pos, msg: msg.into() }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => out.push((start, Tok::Plus)),
            '-' => out.push((start, Tok::Minus)),
            '*' => out.push((start, Tok::Star)),
            '/' => out.push((start, Tok::Slash)),
            '^' => out.push((start, Tok::Caret)),
            '(' => out.push((start, Tok::LParen)),
            ')' => out.push((start, Tok::RParen)),
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digits");
                out.push((start, Tok::Num(n)));
                continue;
            }
            'E' if bytes.get(i + 1) == Some(&b'[') => {
                let close = text[i..].find(']').ok_or_else(|| syntax(start, "unterminated moment symbol"))?;
                let inner: String = text[i + 2..i + close].chars().filter(|c| !c.is_whitespace()).collect();
                out.push((start, Tok::Ident(format!("E[{inner}]"))));
                i += close + 1;
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            other => return Err(syntax(start, format!("unexpected character `{other}`"))),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    ring: &'a VarRing,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Slash) => {
                    let at = self.here();
                    self.bump();
                    let d = self.unary()?;
                    match d.as_constant() {
                        Some(c) if !c.is_zero() => acc = acc.scale(&c.recip()),
                        Some(_) => return Err(syntax(at, "division by zero")),
                        None => return Err(syntax(at, "division by a non-constant")),
                    }
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(-&self.unary()?)
            }
            Some(Tok::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let at = self.here();
            match self.bump() {
                Some(Tok::Num(n)) => {
                    let e = n.to_u32().filter(|&e| e > 0).ok_or_else(|| syntax(at, "exponent must be a positive integer"))?;
                    Ok(base.pow(e))
                }
                _ => Err(syntax(at, "expected integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let at = self.here();
        match self.bump() {
            Some(Tok::Num(n)) => Ok(Polynomial::constant(self.ring, Rational::from_integer(n))),
            Some(Tok::Ident(name)) => {
                let idx = self.ring.require(&name)?;
                Ok(Polynomial::var(self.ring, idx))
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                let close = self.here();
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(syntax(close, "expected `)`")),
                }
            }
            Some(t) => Err(syntax(at, format!("unexpected token {t:?}"))),
            None => Err(syntax(at, "unexpected end of input")),
        }
    }
}

/// Parses `text` into a canonical polynomial over `ring`.
pub fn parse_poly(text: &str, ring: &VarRing) -> Result<Polynomial> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(syntax(0, "empty polynomial"));
    }
    let mut p = Parser { toks, pos: 0, end: text.len(), ring };
    let out = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(syntax(p.here(), "unexpected trailing input"));
    }
    Ok(out)
}

/// Parses an exact rational literal such as `-3`, `1/2` or `(1/2)`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    parse_poly(text, &VarRing::empty())?.as_constant().ok_or_else(|| syntax(0, format!("`{text}` is not a rational constant")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, Monomial};

    #[test]
    fn parses_product_generator() {
        let ring = VarRing::new(["g", "f", "y", "x"]).unwrap();
        let p = parse_poly("x - 2*g", &ring).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.coeff(&Monomial::var(4, 3)), rat(1));
        assert_eq!(p.coeff(&Monomial::var(4, 0)), rat(-2));
    }

    #[test]
    fn zero_and_cancellation() {
        let ring = VarRing::new(["x"]).unwrap();
        assert!(parse_poly("0", &ring).unwrap().is_zero());
        let p = parse_poly("(x+1)^2 - x^2 - 2*x", &ring).unwrap();
        assert_eq!(p.as_constant(), Some(rat(1)));
    }

    #[test]
    fn rational_coefficients() {
        let ring = VarRing::new(["x"]).unwrap();
        let p = parse_poly("3/4*x - 1/2", &ring).unwrap();
        assert_eq!(p.to_string(), "3/4*x - 1/2");
        assert_eq!(parse_rational("-36").unwrap(), rat(-36));
    }

    #[test]
    fn moment_symbols_are_atoms() {
        let ring = VarRing::new(["E[x]", "E[x*y]", "E[y^2]"]).unwrap();
        let p = parse_poly("9*E[x] - 2*E[x * y] - 2*E[y^2]", &ring).unwrap();
        assert_eq!(p.num_terms(), 3);
    }

    #[test]
    fn errors_report_positions() {
        let ring = VarRing::new(["x"]).unwrap();
        assert_eq!(parse_poly("x + z", &ring), Err(Error::UnknownVariable("z".into())));
        match parse_poly("x + * 2", &ring) {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_poly("x^0", &ring), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("x / x", &ring), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("(x + 1", &ring), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("x x", &ring), Err(Error::Syntax { .. })));
    }

    #[test]
    fn format_then_parse_is_identity() {
        let ring = VarRing::new(["x", "y"]).unwrap();
        let p = parse_poly("-(x - 1/3*y)^3 + 7", &ring).unwrap();
        assert_eq!(parse_poly(&p.to_string(), &ring).unwrap(), p);
    }
}
