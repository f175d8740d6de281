//! Parser for the polynomial text format, e.g.
//! `x^2 - 2*x*w - w^2 - 2*x - 2*w + 1`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use super::{Monomial, Polynomial};
use crate::error::{Error, Result};
use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    Int(BigInt),
    Ident(String),
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut toks = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' | '\n' => {
                chars.next();
            }
            '+' => {
                chars.next();
                toks.push(Tok::Plus);
            }
            '-' => {
                chars.next();
                toks.push(Tok::Minus);
            }
            '*' => {
                chars.next();
                toks.push(Tok::Star);
            }
            '^' => {
                chars.next();
                toks.push(Tok::Caret);
            }
            '/' => {
                chars.next();
                toks.push(Tok::Slash);
            }
            '(' => {
                chars.next();
                toks.push(Tok::LParen);
            }
            ')' => {
                chars.next();
                toks.push(Tok::RParen);
            }
            '0'..='9' => {
                let mut num = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        num.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                toks.push(Tok::Int(num.parse().expect("digits")));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut id = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        id.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                toks.push(Tok::Ident(id));
            }
            other => {
                return Err(Error::Parse(format!("unexpected character `{other}`")));
            }
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: &'a [Tok],
    pos: usize,
    vars: &'a Arc<Vec<String>>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<&Tok> {
        let t = self.toks.get(self.pos);
        self.pos += 1;
        t
    }

    fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::Parse(format!("unknown variable `{name}`")))
    }

    // expr := term (('+'|'-') term)*
    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.next();
                self.term()?.neg()
            }
            Some(Tok::Plus) => {
                self.next();
                self.term()?
            }
            _ => self.term()?,
        };
        while let Some(t) = self.peek() {
            match t {
                Tok::Plus => {
                    self.next();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.next();
                    acc = acc.sub(&self.term()?);
                }
                Tok::RParen => break,
                other => {
                    return Err(Error::Parse(format!("unexpected token {other:?}")));
                }
            }
        }
        Ok(acc)
    }

    // term := factor ('*'? factor)*    (adjacency counts as multiplication)
    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.next();
                    acc = acc.mul(&self.factor()?);
                }
                Some(Tok::Ident(_)) | Some(Tok::Int(_)) | Some(Tok::LParen) => {
                    acc = acc.mul(&self.factor()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    // factor := atom ('^' int)?
    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.next();
            match self.next().cloned() {
                Some(Tok::Int(e)) => {
                    let e: u32 = e.to_string().parse().map_err(|_| {
                        Error::Parse("exponent out of range".into())
                    })?;
                    Ok(base.pow(e))
                }
                other => Err(Error::Parse(format!("expected exponent, got {other:?}"))),
            }
        } else {
            Ok(base)
        }
    }

    // atom := int ('/' int)? | ident | '(' expr ')'
    fn atom(&mut self) -> Result<Polynomial> {
        match self.next().cloned() {
            Some(Tok::Int(n)) => {
                if let Some(Tok::Slash) = self.peek() {
                    self.next();
                    match self.next().cloned() {
                        Some(Tok::Int(d)) => {
                            if d == BigInt::from(0) {
                                return Err(Error::Parse("zero denominator".into()));
                            }
                            Ok(Polynomial::constant(self.vars.clone(), Rat::new(n, d)))
                        }
                        other => {
                            Err(Error::Parse(format!("expected denominator, got {other:?}")))
                        }
                    }
                } else {
                    Ok(Polynomial::constant(self.vars.clone(), Rat::from_integer(n)))
                }
            }
            Some(Tok::Ident(name)) => {
                let i = self.var_index(&name)?;
                Ok(Polynomial::from_terms(
                    self.vars.clone(),
                    [(Monomial::var(self.vars.len(), i), Rat::one())],
                ))
            }
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(e),
                    other => Err(Error::Parse(format!("expected `)`, got {other:?}"))),
                }
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

pub fn parse_poly(vars: &Arc<Vec<String>>, s: &str) -> Result<Polynomial> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let toks = tokenize(s)?;
    let mut p = Parser { toks: &toks, pos: 0, vars };
    let poly = p.expr()?;
    if p.pos != toks.len() {
        return Err(Error::Parse("trailing input after polynomial".into()));
    }
    Ok(poly)
}
