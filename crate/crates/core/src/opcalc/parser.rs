//! Recursive-descent parser for the operator mini-language.
//!
//! ```text
//! expr   := sign? term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := int ('/' int)? | ident | '(' expr ('|' unit)? ')'
//! unit   := '1' | 'i' | 'j' | 'k'
//! ```
//!
//! Identifiers are `x y z Dx Dy Dz i j k` and the scalar symbols. A product
//! is operator composition, so `Dx*x` parses to `x*Dx + 1`. `(A|u)` is
//! `Ψ ↦ A(Ψ) u`.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use super::OperatorExpr;
use crate::qalg::{SymScalar, Symbol, Unit};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown symbol `{name}` at {pos}")]
    UnknownSymbol { pos: usize, name: String },
    #[error("right factor at {pos} must be one of 1, i, j, k (found `{found}`)")]
    RightUnit { pos: usize, found: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

struct Lexer;

impl Lexer {
    fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
        let chars: Vec<(usize, char)> = src.char_indices().collect();
        let mut out = Vec::new();
        let mut n = 0;
        while n < chars.len() {
            let (pos, c) = chars[n];
            if c.is_whitespace() {
                n += 1;
            } else if c.is_ascii_digit() {
                let start = n;
                while n < chars.len() && chars[n].1.is_ascii_digit() {
                    n += 1;
                }
                let s: String = chars[start..n].iter().map(|p| p.1).collect();
                out.push((pos, Tok::Int(s.parse().expect("digits"))));
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = n;
                while n < chars.len() && (chars[n].1.is_ascii_alphanumeric() || chars[n].1 == '_') {
                    n += 1;
                }
                let s: String = chars[start..n].iter().map(|p| p.1).collect();
                out.push((pos, Tok::Ident(s)));
            } else if "+-*/()|".contains(c) {
                out.push((pos, Tok::Sym(c)));
                n += 1;
            } else {
                return Err(ParseError::Syntax {
                    pos,
                    msg: format!("unexpected character `{c}`"),
                });
            }
        }
        Ok(out)
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|t| t.0).unwrap_or(self.end)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<OperatorExpr, ParseError> {
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let first = self.term()?;
        let mut acc = if neg { -&first } else { first };
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

    fn term(&mut self) -> Result<OperatorExpr, ParseError> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = acc.compose(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<OperatorExpr, ParseError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.at += 1;
                let mut r = BigRational::from_integer(n);
                if self.eat('/') {
                    match self.peek().cloned() {
                        Some(Tok::Int(d)) if d != BigInt::from(0) => {
                            self.at += 1;
                            r /= BigRational::from_integer(d);
                        }
                        Some(Tok::Int(_)) => return self.syntax("zero denominator"),
                        _ => return self.syntax("expected integer denominator"),
                    }
                }
                Ok(OperatorExpr::sym(SymScalar::from_rational(r)))
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                ident(&name).ok_or(ParseError::UnknownSymbol { pos, name })
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let inner = self.expr()?;
                let out = if self.eat('|') {
                    let upos = self.pos();
                    let u = match self.peek().cloned() {
                        Some(Tok::Int(n)) if n == BigInt::from(1) => Unit::One,
                        Some(Tok::Ident(s)) if s == "i" => Unit::I,
                        Some(Tok::Ident(s)) if s == "j" => Unit::J,
                        Some(Tok::Ident(s)) if s == "k" => Unit::K,
                        Some(t) => {
                            return Err(ParseError::RightUnit {
                                pos: upos,
                                found: tok_text(&t),
                            })
                        }
                        None => return self.syntax("expected right unit"),
                    };
                    self.at += 1;
                    OperatorExpr::right_unit(u).compose(&inner)
                } else {
                    inner
                };
                if !self.eat(')') {
                    return self.syntax("expected `)`");
                }
                Ok(out)
            }
            Some(Tok::Sym('|')) => self.syntax("`|` is only allowed inside `( … )`"),
            Some(t) => self.syntax(format!("unexpected `{}`", tok_text(&t))),
            None => self.syntax("unexpected end of input"),
        }
    }
}

fn tok_text(t: &Tok) -> String {
    match t {
        Tok::Int(n) => n.to_string(),
        Tok::Ident(s) => s.clone(),
        Tok::Sym(c) => c.to_string(),
    }
}

fn ident(name: &str) -> Option<OperatorExpr> {
    Some(match name {
        "x" => OperatorExpr::coord(0),
        "y" => OperatorExpr::coord(1),
        "z" => OperatorExpr::coord(2),
        "Dx" => OperatorExpr::deriv(0),
        "Dy" => OperatorExpr::deriv(1),
        "Dz" => OperatorExpr::deriv(2),
        "i" => OperatorExpr::left_unit(Unit::I),
        "j" => OperatorExpr::left_unit(Unit::J),
        "k" => OperatorExpr::left_unit(Unit::K),
        other => OperatorExpr::symbol(Symbol::from_name(other)?),
    })
}

/// Parses mini-language text into a canonical expression.
pub fn parse_expr(text: &str) -> Result<OperatorExpr, ParseError> {
    let toks = Lexer::tokenize(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: text.len(),
    };
    if p.peek().is_none() {
        return p.syntax("empty expression");
    }
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.syntax("trailing input");
    }
    Ok(e)
}
