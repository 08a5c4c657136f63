//! Recursive-descent parser for formula text.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! disj    := conj ( "|" conj )*
//! conj    := unary ( "&" unary )*
//! unary   := "~" unary | primary
//! primary := "true" | "false" | ident | "(" disj ")"
//! ident   := [A-Za-z_][A-Za-z0-9_]*
//! ```

use super::Formula;
use crate::{Error, Result};

const EXPECT_OPERAND: &str = "atom, `true`, `false`, `~` or `(`";

pub fn parse_formula(text: &str) -> Result<Formula> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let f = p.disjunction()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("`&`, `|` or end of input"));
    }
    Ok(f)
}

/// Returns true when `name` is usable as an atom.
pub fn is_identifier(name: &str) -> bool {
    let mut bytes = name.bytes();
    match bytes.next() {
        Some(b) if b.is_ascii_alphabetic() || b == b'_' => {}
        _ => return false,
    }
    bytes.all(|b| b.is_ascii_alphanumeric() || b == b'_') && name != "true" && name != "false"
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, expected: &str) -> Error {
        Error::Syntax { offset: self.pos, expected: expected.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, byte: u8) -> bool {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut lhs = self.conjunction()?;
        while self.eat(b'|') {
            let rhs = self.conjunction()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while self.eat(b'&') {
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        if self.eat(b'~') {
            return Ok(Formula::not(self.unary()?));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Formula> {
        self.skip_ws();
        match self.src.get(self.pos) {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.disjunction()?;
                if !self.eat(b')') {
                    return Err(self.error("`)`"));
                }
                Ok(inner)
            }
            Some(&b) if b.is_ascii_alphabetic() || b == b'_' => {
                let start = self.pos;
                while self
                    .src
                    .get(self.pos)
                    .is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_')
                {
                    self.pos += 1;
                }
                // the slice is ASCII by construction
                let word = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Ok(match word {
                    "true" => Formula::Top,
                    "false" => Formula::Bot,
                    _ => Formula::atom(word),
                })
            }
            _ => Err(self.error(EXPECT_OPERAND)),
        }
    }
}
