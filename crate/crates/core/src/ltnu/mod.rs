//! The linear-time ν-calculus.
//!
//! Terms are built from `top`, `bot`, literals `p` and `~p`, `&`, `|`,
//! next `o t`, variables and greatest fixpoints `nu X. t`. Every term
//! denotes a safety property. [`Term`] is the plain syntax tree used for
//! parsing and printing; the [`Engine`] interns terms, computes their
//! derivatives and decides validity by cyclic proof search.

mod engine;
mod monitor;
mod parse;
mod semantics;

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

pub use engine::{Engine, SetId, TermId};
pub use monitor::{refuted_prefix, LtnuError, LtnuGeneralisedMonitor, LtnuMonitor};
pub use parse::{parse_term, TermParseError};
pub use semantics::satisfies_lasso;

use crate::alphabet::{Interpretation, Prop};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Term {
    Top,
    Bot,
    Prop(Prop),
    CoProp(Prop),
    And(Box<Term>, Box<Term>),
    Or(Box<Term>, Box<Term>),
    Next(Box<Term>),
    Var(String),
    Nu(String, Box<Term>),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TermError {
    #[error("variable `{0}` is not bound")]
    Unbound(String),
    #[error("variable `{0}` occurs without an enclosing `o` inside its binder")]
    NotContractive(String),
}

impl Term {
    pub fn and(a: Term, b: Term) -> Term {
        Term::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Term, b: Term) -> Term {
        Term::Or(Box::new(a), Box::new(b))
    }

    pub fn next(a: Term) -> Term {
        Term::Next(Box::new(a))
    }

    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn nu(name: &str, body: Term) -> Term {
        Term::Nu(name.to_string(), Box::new(body))
    }

    /// Left-nested conjunction; `top` when empty.
    pub fn conj(terms: impl IntoIterator<Item = Term>) -> Term {
        terms.into_iter().reduce(Term::and).unwrap_or(Term::Top)
    }

    /// Left-nested disjunction; `bot` when empty.
    pub fn disj(terms: impl IntoIterator<Item = Term>) -> Term {
        terms.into_iter().reduce(Term::or).unwrap_or(Term::Bot)
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Top | Term::Bot | Term::Prop(_) | Term::CoProp(_) | Term::Var(_) => 1,
            Term::Next(a) | Term::Nu(_, a) => 1 + a.size(),
            Term::And(a, b) | Term::Or(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Rank: the number of `&`, `|` and `nu` nodes on the longest path to a
    /// literal, constant or `o` node.
    pub fn rank(&self) -> usize {
        match self {
            Term::Top | Term::Bot | Term::Prop(_) | Term::CoProp(_) | Term::Next(_) | Term::Var(_) => 0,
            Term::And(a, b) | Term::Or(a, b) => 1 + a.rank().max(b.rank()),
            Term::Nu(_, a) => 1 + a.rank(),
        }
    }

    /// `self{s/X}`; binders of `X` stop the substitution.
    pub fn subst(&self, x: &str, s: &Term) -> Term {
        match self {
            Term::Var(y) if y == x => s.clone(),
            Term::Nu(y, _) if y == x => self.clone(),
            Term::Top | Term::Bot | Term::Prop(_) | Term::CoProp(_) | Term::Var(_) => self.clone(),
            Term::And(a, b) => Term::and(a.subst(x, s), b.subst(x, s)),
            Term::Or(a, b) => Term::or(a.subst(x, s), b.subst(x, s)),
            Term::Next(a) => Term::next(a.subst(x, s)),
            Term::Nu(y, a) => Term::Nu(y.clone(), Box::new(a.subst(x, s))),
        }
    }

    /// One unfolding of a fixpoint, `t{νX.t/X}`; other terms are returned
    /// unchanged.
    pub fn unfold(&self) -> Term {
        match self {
            Term::Nu(x, body) => body.subst(x, self),
            _ => self.clone(),
        }
    }

    /// Checks that the term is closed and that every variable occurrence is
    /// guarded by `o` inside its binder.
    pub fn check(&self) -> Result<(), TermError> {
        fn go<'a>(t: &'a Term, scope: &mut Vec<(&'a str, bool)>) -> Result<(), TermError> {
            match t {
                Term::Top | Term::Bot | Term::Prop(_) | Term::CoProp(_) => Ok(()),
                Term::Var(x) => match scope.iter().rev().find(|(y, _)| y == x) {
                    None => Err(TermError::Unbound(x.clone())),
                    Some((_, false)) => Err(TermError::NotContractive(x.clone())),
                    Some((_, true)) => Ok(()),
                },
                Term::And(a, b) | Term::Or(a, b) => {
                    go(a, scope)?;
                    go(b, scope)
                }
                Term::Next(a) => {
                    let mut guarded: Vec<(&str, bool)> = scope.iter().map(|&(x, _)| (x, true)).collect();
                    go(a, &mut guarded)
                }
                Term::Nu(x, a) => {
                    scope.push((x, false));
                    let r = go(a, scope);
                    scope.pop();
                    r
                }
            }
        }
        go(self, &mut Vec::new())
    }

    pub fn display<'a>(&'a self, interp: &'a Interpretation) -> impl fmt::Display + 'a {
        Printer { term: self, interp }
    }

    pub fn to_text(&self, interp: &Interpretation) -> String {
        self.display(interp).to_string()
    }
}

struct Printer<'a> {
    term: &'a Term,
    interp: &'a Interpretation,
}

impl fmt::Display for Printer<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(self.term, self.interp, f)
    }
}

/// Operands of `&`, `|` and `o` are parenthesised when they are binary or
/// fixpoints, so printing and parsing round-trip exactly.
fn write_term(t: &Term, interp: &Interpretation, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let operand = |t: &Term, f: &mut fmt::Formatter<'_>| -> fmt::Result {
        if matches!(t, Term::And(..) | Term::Or(..) | Term::Nu(..)) {
            f.write_str("(")?;
            write_term(t, interp, f)?;
            f.write_str(")")
        } else {
            write_term(t, interp, f)
        }
    };
    match t {
        Term::Top => f.write_str("top"),
        Term::Bot => f.write_str("bot"),
        Term::Prop(p) => f.write_str(interp.prop_name(*p)),
        Term::CoProp(p) => write!(f, "~{}", interp.prop_name(*p)),
        Term::Var(x) => f.write_str(x),
        Term::Next(a) => {
            f.write_str("o ")?;
            operand(a, f)
        }
        Term::And(a, b) | Term::Or(a, b) => {
            operand(a, f)?;
            f.write_str(if matches!(t, Term::And(..)) { " & " } else { " | " })?;
            operand(b, f)
        }
        Term::Nu(x, a) => {
            write!(f, "nu {x}. ")?;
            write_term(a, interp, f)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Interpretation {
        Interpretation::valuation(&["a", "b"]).unwrap()
    }

    #[test]
    fn rank_examples() {
        let a = Term::Prop(Prop(0));
        assert_eq!(Term::Top.rank(), 0);
        let t = Term::nu("X", Term::and(a.clone(), Term::next(Term::var("X"))));
        assert_eq!(t.rank(), 2);
        assert_eq!(t.unfold().rank(), 1);
    }

    #[test]
    fn contractivity() {
        let a = Term::Prop(Prop(0));
        let ok = Term::nu("X", Term::and(a.clone(), Term::next(Term::var("X"))));
        assert_eq!(ok.check(), Ok(()));
        let bad = Term::nu("X", Term::or(a.clone(), Term::var("X")));
        assert_eq!(bad.check(), Err(TermError::NotContractive("X".into())));
        assert_eq!(Term::next(Term::var("Y")).check(), Err(TermError::Unbound("Y".into())));
        // An inner binder of the same name is unguarded again.
        let shadow = Term::nu("X", Term::next(Term::nu("X", Term::var("X"))));
        assert!(shadow.check().is_err());
    }

    #[test]
    fn printing() {
        let i = ab();
        let t = Term::nu(
            "X",
            Term::and(Term::and(Term::Prop(Prop(0)), Term::CoProp(Prop(1))), Term::next(Term::var("X"))),
        );
        assert_eq!(t.to_text(&i), "nu X. (a & ~b) & o X");
        assert_eq!(Term::next(Term::or(Term::Top, Term::Bot)).to_text(&i), "o (top | bot)");
    }

    #[test]
    fn substitution_respects_binders() {
        let x = Term::var("X");
        let inner = Term::nu("X", Term::next(x.clone()));
        let t = Term::and(Term::next(x.clone()), inner.clone());
        let s = t.subst("X", &Term::Top);
        assert_eq!(s, Term::and(Term::next(Term::Top), inner));
    }
}
