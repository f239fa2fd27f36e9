//! Recursive-descent parser for terms.
//!
//! ```text
//! term   := sum ('|' sum)*
//! sum    := scaled ('+' scaled)*
//! scaled := scalar '.' scaled | atom
//! atom   := 'bot' | '0' | ident | '(' term ')'
//! ```
//!
//! A number followed by `.` is a scalar; the lone number `0` is the zero
//! term. Identifiers are `[a-zA-Z][a-zA-Z0-9_]*` other than `bot`.

use super::Term;
use crate::error::{Error, Result};
use crate::semiring::Semiring;
use crate::symbol::Symbol;

pub fn parse(text: &str, semiring: Semiring) -> Result<Term> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        semiring,
    };
    let t = p.term()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(t)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    semiring: Semiring,
}

impl<'a> Parser<'a> {
    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn term(&mut self) -> Result<Term> {
        let mut t = self.sum()?;
        while self.eat(b'|') {
            t = Term::Join(Box::new(t), Box::new(self.sum()?));
        }
        Ok(t)
    }

    fn sum(&mut self) -> Result<Term> {
        let mut t = self.scaled()?;
        while self.eat(b'+') {
            t = Term::Add(Box::new(t), Box::new(self.scaled()?));
        }
        Ok(t)
    }

    fn scaled(&mut self) -> Result<Term> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let number = self.number();
                if self.eat(b'.') {
                    let lambda = self
                        .semiring
                        .parse_scalar(number)
                        .map_err(|_| Error::Syntax {
                            pos: start,
                            msg: format!("`{number}` is not a scalar of {}", self.semiring),
                        })?;
                    Ok(Term::Scale(lambda, Box::new(self.scaled()?)))
                } else if number == "0" {
                    Ok(Term::Zero)
                } else {
                    Err(Error::Syntax {
                        pos: start,
                        msg: format!("number `{number}` must be followed by `.`"),
                    })
                }
            }
            _ => self.atom(),
        }
    }

    fn number(&mut self) -> &'a str {
        let start = self.pos;
        let digits = |p: &mut Self| {
            while p.pos < p.src.len() && p.src[p.pos].is_ascii_digit() {
                p.pos += 1;
            }
        };
        digits(self);
        if self.src.get(self.pos) == Some(&b'/')
            && self.src.get(self.pos + 1).is_some_and(u8::is_ascii_digit)
        {
            self.pos += 1;
            digits(self);
        }
        let src: &'a [u8] = self.src;
        std::str::from_utf8(&src[start..self.pos]).expect("ascii")
    }

    fn atom(&mut self) -> Result<Term> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let t = self.term()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(t)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                Ok(if name == "bot" {
                    Term::Bot
                } else {
                    Term::Var(Symbol::new(name))
                })
            }
            Some(c) => Err(self.error(format!("unexpected `{}`", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
