//! Negation-free linear temporal logic.
//!
//! Formulas are kept in negation normal form: negation only appears on
//! literals (`!p`). The parser pushes `!` down with the usual dualities, and
//! `F φ`/`G φ` are expanded to `true U φ` and `false R φ`.

mod eval;
mod parse;

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::{self, Write};

pub use eval::{eval_lasso, eval_lasso_at, satisfaction_table};
pub use parse::{parse, ParseError};

use crate::alphabet::{Interpretation, Prop};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Formula {
    True,
    False,
    Prop(Prop),
    NotProp(Prop),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Until(Box<Formula>, Box<Formula>),
    Release(Box<Formula>, Box<Formula>),
    Next(Box<Formula>),
}

impl Formula {
    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn until(a: Formula, b: Formula) -> Formula {
        Formula::Until(Box::new(a), Box::new(b))
    }

    pub fn release(a: Formula, b: Formula) -> Formula {
        Formula::Release(Box::new(a), Box::new(b))
    }

    pub fn next(a: Formula) -> Formula {
        Formula::Next(Box::new(a))
    }

    /// `F φ ≡ true U φ`
    pub fn eventually(a: Formula) -> Formula {
        Formula::until(Formula::True, a)
    }

    /// `G φ ≡ false R φ`
    pub fn always(a: Formula) -> Formula {
        Formula::release(Formula::False, a)
    }

    /// The formula denoting the complement language, obtained by swapping
    /// `true`/`false`, `p`/`!p`, `&`/`|` and `U`/`R`.
    pub fn dual(&self) -> Formula {
        match self {
            Formula::True => Formula::False,
            Formula::False => Formula::True,
            Formula::Prop(p) => Formula::NotProp(*p),
            Formula::NotProp(p) => Formula::Prop(*p),
            Formula::And(a, b) => Formula::or(a.dual(), b.dual()),
            Formula::Or(a, b) => Formula::and(a.dual(), b.dual()),
            Formula::Until(a, b) => Formula::release(a.dual(), b.dual()),
            Formula::Release(a, b) => Formula::until(a.dual(), b.dual()),
            Formula::Next(a) => Formula::next(a.dual()),
        }
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::True | Formula::False | Formula::Prop(_) | Formula::NotProp(_) => 1,
            Formula::Next(a) => 1 + a.size(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Until(a, b) | Formula::Release(a, b) => {
                1 + a.size() + b.size()
            }
        }
    }

    /// Immediate subformulas.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::True | Formula::False | Formula::Prop(_) | Formula::NotProp(_) => Vec::new(),
            Formula::Next(a) => alloc::vec![&**a],
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Until(a, b) | Formula::Release(a, b) => {
                alloc::vec![&**a, &**b]
            }
        }
    }

    /// Subformulas in post-order (children before parents), without
    /// duplicates.
    pub fn subformulas(&self) -> Vec<&Formula> {
        fn go<'a>(f: &'a Formula, out: &mut Vec<&'a Formula>) {
            for c in f.children() {
                go(c, out);
            }
            if !out.contains(&f) {
                out.push(f);
            }
        }
        let mut out = Vec::new();
        go(self, &mut out);
        out
    }

    /// Propositions occurring in the formula, in increasing order.
    pub fn props(&self) -> Vec<Prop> {
        let mut out: Vec<Prop> = self
            .subformulas()
            .into_iter()
            .filter_map(|f| match f {
                Formula::Prop(p) | Formula::NotProp(p) => Some(*p),
                _ => None,
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Renders the formula in the concrete grammar accepted by [`parse`].
    pub fn display<'a>(&'a self, interp: &'a Interpretation) -> impl fmt::Display + 'a {
        DisplayFormula { formula: self, interp }
    }

    pub fn to_text(&self, interp: &Interpretation) -> String {
        let mut s = String::new();
        let _ = write!(s, "{}", self.display(interp));
        s
    }
}

struct DisplayFormula<'a> {
    formula: &'a Formula,
    interp: &'a Interpretation,
}

fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Or(..) => 1,
        Formula::And(..) => 2,
        Formula::Until(..) | Formula::Release(..) => 3,
        Formula::Next(..) => 4,
        _ => 5,
    }
}

impl DisplayFormula<'_> {
    fn write(&self, f: &Formula, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = |p: &Prop| self.interp.prop_name(*p);
        match f {
            Formula::True => out.write_str("true"),
            Formula::False => out.write_str("false"),
            Formula::Prop(p) => out.write_str(name(p)),
            Formula::NotProp(p) => write!(out, "!{}", name(p)),
            Formula::Next(a) => {
                out.write_str("X ")?;
                self.child(a, 4, out)
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Until(a, b) | Formula::Release(a, b) => {
                let (op, prec) = match f {
                    Formula::And(..) => ("&", 2),
                    Formula::Or(..) => ("|", 1),
                    Formula::Until(..) => ("U", 3),
                    _ => ("R", 3),
                };
                // Parenthesise any binary child of equal precedence so the
                // printed tree parses back to the same shape.
                self.child(a, prec + 1, out)?;
                write!(out, " {op} ")?;
                self.child(b, prec + 1, out)
            }
        }
    }

    fn child(&self, c: &Formula, min_prec: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if precedence(c) < min_prec {
            out.write_str("(")?;
            self.write(c, out)?;
            out.write_str(")")
        } else {
            self.write(c, out)
        }
    }
}

impl fmt::Display for DisplayFormula<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(self.formula, f)
    }
}
