//! Recursive-descent parser for the polynomial grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' uint)?
//! atom   := uint ('/' uint)? | ident | 'conj' '(' ident ')' | '(' expr ')'
//! ```
//!
//! Implicit multiplication is rejected.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Poly, Rational, VarContext, PARAMETER_NAME};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            d if d.is_ascii_digit() => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Int(text[start..i].parse().unwrap())));
                continue;
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            other => {
                return Err(Error::Syntax { pos: start, msg: format!("unexpected character `{other}`") })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    idx: usize,
    end: usize,
    ctx: &'a Arc<VarContext>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.idx).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.idx).map(|(_, t)| t.clone());
        self.idx += 1;
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.idx += 1;
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.idx += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.idx += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        while self.peek() == Some(&Tok::Star) {
            self.idx += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly> {
        if self.peek() == Some(&Tok::Minus) {
            self.idx += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.idx += 1;
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(k)) => {
                let k: u32 = k
                    .try_into()
                    .map_err(|_| Error::Syntax { pos, msg: "exponent too large".into() })?;
                Ok(base.pow(k))
            }
            Some(Tok::Minus) => Err(Error::NegativeExponent(pos)),
            _ => Err(Error::Syntax { pos, msg: "expected a non-negative integer exponent".into() }),
        }
    }

    fn variable(&self, name: &str, pos: usize) -> Result<Poly> {
        if let Some(i) = self.ctx.index_of(name) {
            return Ok(Poly::var(self.ctx, i));
        }
        if name == PARAMETER_NAME && self.ctx.has_parameter() {
            return Ok(Poly::param(self.ctx));
        }
        Err(Error::UnknownIdentifier { name: name.to_string(), pos })
    }

    fn atom(&mut self) -> Result<Poly> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(n)) => {
                if self.peek() == Some(&Tok::Slash) {
                    self.idx += 1;
                    let dpos = self.pos();
                    match self.bump() {
                        Some(Tok::Int(d)) if !d.is_zero() => {
                            Ok(Poly::constant(self.ctx, Rational::new(n, d)))
                        }
                        Some(Tok::Int(_)) => Err(Error::Syntax { pos: dpos, msg: "zero denominator".into() }),
                        _ => Err(Error::Syntax { pos: dpos, msg: "expected an integer denominator".into() }),
                    }
                } else {
                    Ok(Poly::constant(self.ctx, Rational::from_integer(n)))
                }
            }
            Some(Tok::Ident(name)) if name == "conj" => {
                self.expect(Tok::LParen, "`(` after conj")?;
                let vpos = self.pos();
                let inner = match self.bump() {
                    Some(Tok::Ident(v)) => v,
                    _ => return Err(Error::Syntax { pos: vpos, msg: "expected a variable inside conj()".into() }),
                };
                self.expect(Tok::RParen, "`)`")?;
                let i = self
                    .ctx
                    .index_of(&inner)
                    .ok_or(Error::UnknownIdentifier { name: inner.clone(), pos: vpos })?;
                if !self.ctx.has_conjugates() {
                    return Err(Error::Syntax { pos, msg: "conjugates are not enabled in this context".into() });
                }
                Ok(Poly::conj_var(self.ctx, i))
            }
            Some(Tok::Ident(name)) => self.variable(&name, pos),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Some(_) => Err(Error::Syntax { pos, msg: "expected a number, variable or `(`".into() }),
            None => Err(Error::Syntax { pos, msg: "unexpected end of input".into() }),
        }
    }
}

/// Parses `text` into a canonical polynomial of `ctx`.
pub fn parse_poly(text: &str, ctx: &Arc<VarContext>) -> Result<Poly> {
    let toks = lex(text)?;
    let mut p = Parser { toks, idx: 0, end: text.len(), ctx };
    let out = p.expr()?;
    if p.idx < p.toks.len() {
        return p.err("unexpected token (implicit multiplication is not allowed)");
    }
    Ok(out)
}
