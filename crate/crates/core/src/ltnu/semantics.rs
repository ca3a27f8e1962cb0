//! The coinductive satisfaction relation `w ⊨C t` on lasso words.
//!
//! Works directly on the syntax tree, independently of
//! [`Engine`](crate::ltnu::Engine). Every closed term reached by unfolding
//! `t` is an occurrence of a subterm of `t` with its enclosing binders
//! substituted, so the pairs (occurrence, lasso position) form a finite
//! and/or graph; a variable stands for its binder. The greatest fixpoint of
//! that graph is the satisfaction relation.

use alloc::vec;
use alloc::vec::Vec;

use super::Term;
use crate::lasso::LassoWord;

enum Node {
    Const(bool),
    All(Vec<usize>),
    Any(Vec<usize>),
}

enum Occ {
    Top,
    Bot,
    Prop(crate::Prop),
    CoProp(crate::Prop),
    And(usize, usize),
    Or(usize, usize),
    Next(usize),
    /// A binder or a bound variable: both continue with the binder's body.
    Jump(usize),
}

fn flatten<'a>(t: &'a Term, scope: &mut Vec<(&'a str, usize)>, out: &mut Vec<Occ>) -> usize {
    let i = out.len();
    out.push(Occ::Top);
    let occ = match t {
        Term::Top => Occ::Top,
        Term::Bot => Occ::Bot,
        Term::Prop(p) => Occ::Prop(*p),
        Term::CoProp(p) => Occ::CoProp(*p),
        Term::And(a, b) => Occ::And(flatten(a, scope, out), flatten(b, scope, out)),
        Term::Or(a, b) => Occ::Or(flatten(a, scope, out), flatten(b, scope, out)),
        Term::Next(a) => Occ::Next(flatten(a, scope, out)),
        Term::Var(x) => match scope.iter().rev().find(|(y, _)| y == x) {
            Some(&(_, binder)) => Occ::Jump(binder),
            None => Occ::Bot,
        },
        Term::Nu(x, body) => {
            scope.push((x, i));
            let b = flatten(body, scope, out);
            scope.pop();
            Occ::Jump(b)
        }
    };
    out[i] = occ;
    i
}

/// `u·v^ω ⊨C t` for a closed term `t`.
pub fn satisfies_lasso(t: &Term, w: &LassoWord) -> bool {
    let mut occs = Vec::new();
    flatten(t, &mut Vec::new(), &mut occs);
    let n = w.positions();
    let id = |o: usize, pos: usize| o * n + pos;
    let mut nodes: Vec<Node> = Vec::with_capacity(occs.len() * n);
    for occ in &occs {
        for pos in 0..n {
            let letter = w.at(pos);
            nodes.push(match *occ {
                Occ::Top => Node::Const(true),
                Occ::Bot => Node::Const(false),
                Occ::Prop(p) => Node::Const(letter.satisfies(p)),
                Occ::CoProp(p) => Node::Const(!letter.satisfies(p)),
                Occ::And(a, b) => Node::All(vec![id(a, pos), id(b, pos)]),
                Occ::Or(a, b) => Node::Any(vec![id(a, pos), id(b, pos)]),
                Occ::Next(a) => Node::All(vec![id(a, w.succ(pos))]),
                Occ::Jump(a) => Node::All(vec![id(a, pos)]),
            });
        }
    }

    // Greatest fixpoint: start from everything true and propagate falsity.
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); nodes.len()];
    let mut live: Vec<usize> = vec![0; nodes.len()];
    let mut val = vec![true; nodes.len()];
    let mut work = Vec::new();
    for (i, node) in nodes.iter().enumerate() {
        match node {
            Node::Const(b) => {
                if !b {
                    val[i] = false;
                    work.push(i);
                }
            }
            Node::All(cs) | Node::Any(cs) => {
                live[i] = cs.len();
                for &c in cs {
                    preds[c].push(i);
                }
            }
        }
    }
    while let Some(c) = work.pop() {
        for &p in &preds[c] {
            if !val[p] {
                continue;
            }
            live[p] -= 1;
            let falls = match nodes[p] {
                Node::All(_) => true,
                _ => live[p] == 0,
            };
            if falls {
                val[p] = false;
                work.push(p);
            }
        }
    }
    val[id(0, 0)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Interpretation;
    use crate::lasso::all_lassos;
    use crate::ltnu::parse_term;

    #[test]
    fn always_p() {
        let v = Interpretation::valuation(&["p", "q"]).unwrap();
        let t = parse_term("nu X. p & o X", &v).unwrap();
        for w in all_lassos(&v, 4) {
            let expected = (0..w.positions()).all(|i| w.at(i).satisfies(crate::Prop(0)));
            assert_eq!(satisfies_lasso(&t, &w), expected);
        }
    }

    #[test]
    fn example_pair_covers_everything() {
        let r = Interpretation::raw(&["a", "b", "c", "d"]).unwrap();
        let ts = parse_term("a | c", &r).unwrap();
        let tcos = parse_term("~a | (nu X. ~b & o X)", &r).unwrap();
        for w in all_lassos(&r, 3) {
            assert!(satisfies_lasso(&ts, &w) || satisfies_lasso(&tcos, &w));
        }
    }
}
