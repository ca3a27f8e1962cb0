//! Parser for ν-calculus terms.
//!
//! ```text
//! or    := and ('|' and)*
//! and   := unary ('&' unary)*
//! unary := 'o' unary | 'nu' VAR '.' or | atom
//! atom  := 'top' | 'bot' | name | '~' name | VAR | '(' or ')'
//! ```
//!
//! Variables start with an uppercase letter. Closedness and contractivity
//! are checked while parsing so that errors point at the offending
//! occurrence.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{Term, TermError};
use crate::alphabet::Interpretation;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TermParseError {
    #[error("syntax error at offset {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown proposition `{name}` at offset {position}")]
    UnknownProposition { name: String, position: usize },
    #[error("{error} (offset {position})")]
    Ill { error: TermError, position: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Name(String),
    Var(String),
    Top,
    Bot,
    Nu,
    Next,
    Neg,
    And,
    Or,
    Dot,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, TermParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let start = i;
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_alphabetic() {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let word = &text[start..i];
            let tok = if c.is_ascii_uppercase() {
                Tok::Var(word.to_string())
            } else {
                match word {
                    "top" => Tok::Top,
                    "bot" => Tok::Bot,
                    "nu" => Tok::Nu,
                    "o" => Tok::Next,
                    _ => Tok::Name(word.to_string()),
                }
            };
            out.push((start, tok));
            continue;
        }
        let tok = match c {
            '~' => Tok::Neg,
            '&' => Tok::And,
            '|' => Tok::Or,
            '.' => Tok::Dot,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => {
                return Err(TermParseError::Syntax {
                    position: start,
                    message: alloc::format!("unexpected character `{other}`"),
                })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    interp: &'a Interpretation,
    /// Bound variables, innermost last, with whether an `o` separates the
    /// current position from the binder.
    scope: Vec<(String, bool)>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn error(&self, message: &str) -> TermParseError {
        TermParseError::Syntax { position: self.offset(), message: message.to_string() }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), TermParseError> {
        if self.peek() != Some(&tok) {
            return Err(self.error(what));
        }
        self.pos += 1;
        Ok(())
    }

    fn or(&mut self) -> Result<Term, TermParseError> {
        let mut lhs = self.and()?;
        while self.peek() == Some(&Tok::Or) {
            self.pos += 1;
            lhs = Term::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Term, TermParseError> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Tok::And) {
            self.pos += 1;
            lhs = Term::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Term, TermParseError> {
        match self.peek() {
            Some(Tok::Next) => {
                self.pos += 1;
                let saved = self.scope.clone();
                for entry in &mut self.scope {
                    entry.1 = true;
                }
                let body = self.unary();
                self.scope = saved;
                Ok(Term::next(body?))
            }
            Some(Tok::Nu) => {
                self.pos += 1;
                let name = match self.peek() {
                    Some(Tok::Var(x)) => x.clone(),
                    _ => return Err(self.error("expected an uppercase variable after `nu`")),
                };
                self.pos += 1;
                self.expect(Tok::Dot, "expected `.`")?;
                self.scope.push((name.clone(), false));
                let body = self.or();
                self.scope.pop();
                Ok(Term::Nu(name, alloc::boxed::Box::new(body?)))
            }
            _ => self.atom(),
        }
    }

    fn prop(&mut self, offset: usize) -> Result<crate::alphabet::Prop, TermParseError> {
        match self.toks.get(self.pos).map(|(_, t)| t.clone()) {
            Some(Tok::Name(name)) => {
                self.pos += 1;
                self.interp.prop(&name).ok_or(TermParseError::UnknownProposition { name, position: offset })
            }
            _ => Err(self.error("expected a proposition")),
        }
    }

    fn atom(&mut self) -> Result<Term, TermParseError> {
        let offset = self.offset();
        match self.toks.get(self.pos).map(|(_, t)| t.clone()) {
            Some(Tok::Top) => {
                self.pos += 1;
                Ok(Term::Top)
            }
            Some(Tok::Bot) => {
                self.pos += 1;
                Ok(Term::Bot)
            }
            Some(Tok::Name(_)) => Ok(Term::Prop(self.prop(offset)?)),
            Some(Tok::Neg) => {
                self.pos += 1;
                let offset = self.offset();
                Ok(Term::CoProp(self.prop(offset)?))
            }
            Some(Tok::Var(x)) => {
                self.pos += 1;
                let error = match self.scope.iter().rev().find(|(y, _)| *y == x) {
                    None => TermError::Unbound(x),
                    Some((_, false)) => TermError::NotContractive(x),
                    Some((_, true)) => return Ok(Term::Var(x)),
                };
                Err(TermParseError::Ill { error, position: offset })
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.or()?;
                self.expect(Tok::RParen, "expected `)`")?;
                Ok(inner)
            }
            Some(_) => Err(self.error("expected a term")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

/// Parses a closed, contractive term over the propositions of `interp`.
pub fn parse_term(text: &str, interp: &Interpretation) -> Result<Term, TermParseError> {
    let mut p = Parser { toks: lex(text)?, pos: 0, end: text.len(), interp, scope: Vec::new() };
    let t = p.or()?;
    if p.pos != p.toks.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(t)
}
