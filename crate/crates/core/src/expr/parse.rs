// SPDX-License-Identifier: Apache-2.0

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use super::{Constant, Expr, Func};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseError {
    /// Unexpected or missing token at byte offset `pos`.
    Syntax {
        pos: usize,
        message: String,
    },
    UnknownIdentifier {
        pos: usize,
        name: String,
    },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            Self::Syntax { pos, .. } | Self::UnknownIdentifier { pos, .. } => *pos,
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Syntax { pos, message } => write!(f, "syntax error at offset {pos}: {message}"),
            Self::UnknownIdentifier { pos, name } => {
                write!(f, "unknown identifier `{name}` at offset {pos}")
            }
        }
    }
}

impl core::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' | b'.' => {
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                // exponent only when digits follow, so `2*e` keeps `e` as the constant
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        while j < bytes.len() && bytes[j].is_ascii_digit() {
                            j += 1;
                        }
                        i = j;
                    }
                }
                let lit = &text[start..i];
                let v: f64 = lit.parse().map_err(|_| ParseError::Syntax {
                    pos: start,
                    message: alloc::format!("malformed number `{lit}`"),
                })?;
                out.push((Tok::Num(v), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(ParseError::Syntax {
                    pos: i,
                    message: alloc::format!("unexpected character `{ch}`"),
                });
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    params: &'a [&'a str],
}

pub(super) fn parse(text: &str, params: &[&str]) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
        params,
    };
    let e = p.expr()?;
    match p.peek() {
        Tok::End => Ok(e),
        _ => Err(p.unexpected()),
    }
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn unexpected(&self) -> ParseError {
        let message = match self.peek() {
            Tok::End => "unexpected end of input".to_string(),
            t => alloc::format!("unexpected token {}", describe(t)),
        };
        ParseError::Syntax {
            pos: self.pos(),
            message,
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Slash => {
                    self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if let Tok::Minus = self.peek() {
            self.bump();
            // `-2` is the literal -2; `-(2)` and `-2^2` stay negations
            let after = &self.toks[(self.at + 1).min(self.toks.len() - 1)].0;
            if let (Tok::Num(v), false) = (self.peek(), matches!(after, Tok::Caret)) {
                let v = *v;
                self.bump();
                return Ok(Expr::Num(-v));
            }
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.primary()?;
        if let Tok::Caret = self.peek() {
            self.bump();
            let exponent = self.unary()?;
            return Ok(Expr::Pow(Box::new(base), Box::new(exponent)));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Num(v) => {
                self.bump();
                Ok(Expr::Num(v))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect_rparen()?;
                Ok(inner)
            }
            Tok::Ident(name) => {
                self.bump();
                if let Tok::LParen = self.peek() {
                    let func = Func::from_name(&name).ok_or(ParseError::UnknownIdentifier {
                        pos,
                        name: name.clone(),
                    })?;
                    self.bump();
                    let arg = self.expr()?;
                    self.expect_rparen()?;
                    return Ok(Expr::Call(func, Box::new(arg)));
                }
                match name.as_str() {
                    "s" => Ok(Expr::Var),
                    "pi" => Ok(Expr::Const(Constant::Pi)),
                    "e" => Ok(Expr::Const(Constant::E)),
                    n if self.params.contains(&n) => Ok(Expr::Param(name)),
                    n if Func::from_name(n).is_some() => Err(ParseError::Syntax {
                        pos: self.pos(),
                        message: alloc::format!("expected `(` after `{n}`"),
                    }),
                    _ => Err(ParseError::UnknownIdentifier { pos, name }),
                }
            }
            _ => Err(self.unexpected()),
        }
    }

    fn expect_rparen(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            Tok::RParen => {
                self.bump();
                Ok(())
            }
            _ => Err(self.unexpected()),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(v) => alloc::format!("number {v}"),
        Tok::Ident(n) => alloc::format!("`{n}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Slash => "`/`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::End => "end of input".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_and_associativity() {
        let e = parse("1 - 2 - 3", &[]).unwrap();
        assert_eq!(e.eval(0.0).unwrap(), -4.0);
        let e = parse("-s^2", &[]).unwrap();
        assert!(matches!(e, Expr::Neg(_)));
        assert_eq!(parse("-2", &[]).unwrap(), Expr::Num(-2.0));
        assert_eq!(
            parse("-(2)", &[]).unwrap(),
            Expr::Neg(Box::new(Expr::Num(2.0)))
        );
        assert!(matches!(parse("-2^2", &[]).unwrap(), Expr::Neg(_)));
        assert_eq!(
            parse("2*e", &[]).unwrap().eval(0.0).unwrap(),
            2.0 * core::f64::consts::E
        );
        assert_eq!(parse("1e-3", &[]).unwrap(), Expr::Num(1e-3));
    }

    #[test]
    fn syntax_error_offsets() {
        assert_eq!(parse("2*^3", &[]).unwrap_err().position(), 2);
        assert_eq!(parse("sin(s", &[]).unwrap_err().position(), 5);
        assert_eq!(parse("", &[]).unwrap_err().position(), 0);
        assert!(matches!(
            parse("2 s", &[]),
            Err(ParseError::Syntax { pos: 2, .. })
        ));
        assert!(matches!(
            parse("s # 1", &[]),
            Err(ParseError::Syntax { pos: 2, .. })
        ));
    }

    #[test]
    fn identifiers() {
        assert!(matches!(
            parse("1/r", &[]),
            Err(ParseError::UnknownIdentifier { pos: 2, .. })
        ));
        assert!(matches!(
            parse("foo(s)", &[]),
            Err(ParseError::UnknownIdentifier { pos: 0, .. })
        ));
        assert!(parse("1/r + 2*s", &["r"]).is_ok());
        assert!(parse("1 - sin(s)", &[]).is_ok());
    }
}
