//! Recursive-descent parser for the ASCII formula grammar.
//!
//! ```text
//! or     := and ('|' and)*
//! and    := until ('&' until)*
//! until  := unary (('U' | 'R') until)?          right associative
//! unary  := ('X' | 'F' | 'G' | '!') unary | atom
//! atom   := 'true' | 'false' | name | '(' or ')'
//! ```

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::Formula;
use crate::alphabet::{is_prop_name, Interpretation};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at offset {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown proposition `{name}` at offset {position}")]
    UnknownProposition { name: String, position: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Name(String),
    True,
    False,
    And,
    Or,
    Not,
    Until,
    Release,
    Next,
    Eventually,
    Always,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        let tok = match c {
            c if c.is_ascii_whitespace() => {
                i += 1;
                continue;
            }
            '&' => Tok::And,
            '|' => Tok::Or,
            '!' => Tok::Not,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            'U' => Tok::Until,
            'R' => Tok::Release,
            'X' => Tok::Next,
            'F' => Tok::Eventually,
            'G' => Tok::Always,
            c if c.is_ascii_lowercase() => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let word = &text[start..i];
                out.push((
                    start,
                    match word {
                        "true" => Tok::True,
                        "false" => Tok::False,
                        _ => Tok::Name(word.to_string()),
                    },
                ));
                continue;
            }
            other => {
                return Err(ParseError::Syntax {
                    position: start,
                    message: alloc::format!("unexpected character `{other}`"),
                })
            }
        };
        i += 1;
        out.push((start, tok));
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    interp: &'a Interpretation,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn error(&self, message: &str) -> ParseError {
        ParseError::Syntax { position: self.offset(), message: message.to_string() }
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and()?;
        while self.peek() == Some(&Tok::Or) {
            self.pos += 1;
            lhs = Formula::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.until()?;
        while self.peek() == Some(&Tok::And) {
            self.pos += 1;
            lhs = Formula::and(lhs, self.until()?);
        }
        Ok(lhs)
    }

    fn until(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.unary()?;
        match self.peek() {
            Some(Tok::Until) => {
                self.pos += 1;
                Ok(Formula::until(lhs, self.until()?))
            }
            Some(Tok::Release) => {
                self.pos += 1;
                Ok(Formula::release(lhs, self.until()?))
            }
            _ => Ok(lhs),
        }
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Tok::Next) => {
                self.pos += 1;
                Ok(Formula::next(self.unary()?))
            }
            Some(Tok::Eventually) => {
                self.pos += 1;
                Ok(Formula::eventually(self.unary()?))
            }
            Some(Tok::Always) => {
                self.pos += 1;
                Ok(Formula::always(self.unary()?))
            }
            Some(Tok::Not) => {
                self.pos += 1;
                Ok(self.unary()?.dual())
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        let offset = self.offset();
        match self.toks.get(self.pos).map(|(_, t)| t.clone()) {
            Some(Tok::True) => {
                self.pos += 1;
                Ok(Formula::True)
            }
            Some(Tok::False) => {
                self.pos += 1;
                Ok(Formula::False)
            }
            Some(Tok::Name(name)) => {
                self.pos += 1;
                if !is_prop_name(&name) {
                    return Err(ParseError::Syntax {
                        position: offset,
                        message: alloc::format!("`{name}` is reserved"),
                    });
                }
                self.interp
                    .prop(&name)
                    .map(Formula::Prop)
                    .ok_or(ParseError::UnknownProposition { name, position: offset })
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.or()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(_) => Err(self.error("expected a formula")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

/// Parses a formula over the propositions declared in `interp`.
pub fn parse(text: &str, interp: &Interpretation) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, end: text.len(), interp };
    let f = p.or()?;
    if p.pos != p.toks.len() {
        return Err(p.error("trailing input"));
    }
    Ok(f)
}
