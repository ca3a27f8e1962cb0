//! Exact LTL semantics on lasso words.
//!
//! A lasso `u·v^ω` has `|u| + |v|` distinct positions; the suffix at
//! position `|u| + |v|` coincides with the one at `|u|`. Every subformula
//! is evaluated on all positions at once, bottom-up: `U` as a least and `R`
//! as a greatest fixpoint of its one-step unfolding over the position graph.

use alloc::vec;
use alloc::vec::Vec;

use super::Formula;
use crate::lasso::LassoWord;

/// `u·v^ω, 0 ⊨ φ`.
pub fn eval_lasso(phi: &Formula, w: &LassoWord) -> bool {
    eval_lasso_at(phi, w, 0)
}

/// `u·v^ω, pos ⊨ φ` for a position `pos < |u| + |v|`.
pub fn eval_lasso_at(phi: &Formula, w: &LassoWord, pos: usize) -> bool {
    satisfaction_table(phi, w)[pos]
}

/// Truth value of `phi` at every position of `w`.
pub fn satisfaction_table(phi: &Formula, w: &LassoWord) -> Vec<bool> {
    let n = w.positions();
    match phi {
        Formula::True => vec![true; n],
        Formula::False => vec![false; n],
        Formula::Prop(p) => (0..n).map(|i| w.at(i).satisfies(*p)).collect(),
        Formula::NotProp(p) => (0..n).map(|i| !w.at(i).satisfies(*p)).collect(),
        Formula::And(a, b) => {
            let (a, b) = (satisfaction_table(a, w), satisfaction_table(b, w));
            a.iter().zip(&b).map(|(x, y)| *x && *y).collect()
        }
        Formula::Or(a, b) => {
            let (a, b) = (satisfaction_table(a, w), satisfaction_table(b, w));
            a.iter().zip(&b).map(|(x, y)| *x || *y).collect()
        }
        Formula::Next(a) => {
            let a = satisfaction_table(a, w);
            (0..n).map(|i| a[w.succ(i)]).collect()
        }
        Formula::Until(a, b) => {
            let (a, b) = (satisfaction_table(a, w), satisfaction_table(b, w));
            fixpoint(w, false, |i, val| b[i] || (a[i] && val[w.succ(i)]))
        }
        Formula::Release(a, b) => {
            let (a, b) = (satisfaction_table(a, w), satisfaction_table(b, w));
            fixpoint(w, true, |i, val| b[i] && (a[i] || val[w.succ(i)]))
        }
    }
}

fn fixpoint(w: &LassoWord, init: bool, step: impl Fn(usize, &[bool]) -> bool) -> Vec<bool> {
    let n = w.positions();
    let mut val = vec![init; n];
    loop {
        let mut changed = false;
        // Sweeping backwards settles the prefix in one pass once the loop
        // has stabilised.
        for i in (0..n).rev() {
            let v = step(i, &val);
            if v != val[i] {
                val[i] = v;
                changed = true;
            }
        }
        if !changed {
            return val;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Interpretation;
    use crate::lasso::all_lassos;
    use crate::ltl::parse;

    fn lasso(i: &Interpretation, prefix: &[&str], cycle: &[&str]) -> LassoWord {
        let ev = |s: &&str| i.parse_event(s).unwrap();
        LassoWord::new(prefix.iter().map(ev).collect(), cycle.iter().map(ev).collect()).unwrap()
    }

    #[test]
    fn examples() {
        let v = Interpretation::valuation(&["a", "b"]).unwrap();
        let fb = parse("F b", &v).unwrap();
        assert!(!eval_lasso(&fb, &lasso(&v, &["{a}"], &["{a}"])));
        let ga = parse("G a", &v).unwrap();
        assert!(eval_lasso(&ga, &lasso(&v, &[], &["{a}"])));

        let r = Interpretation::raw(&["a", "b", "c", "d"]).unwrap();
        let phi = parse("(a & F b) | (c & G F d)", &r).unwrap();
        assert!(eval_lasso(&phi, &lasso(&r, &["c"], &["d"])));
        assert!(!eval_lasso(&phi, &lasso(&r, &["c", "d"], &["a"])));
        assert!(eval_lasso(&phi, &lasso(&r, &["a", "c"], &["b", "c"])));
        assert!(!eval_lasso(&phi, &lasso(&r, &["b"], &["a", "b"])));
    }

    /// Direct unfolding of the textbook clauses over the first `horizon`
    /// letters of the infinite word, valid once `horizon` covers a full
    /// traversal of the loop for every nested temporal operator.
    fn bounded(phi: &Formula, w: &LassoWord, i: usize, horizon: usize) -> bool {
        match phi {
            Formula::True => true,
            Formula::False => false,
            Formula::Prop(p) => w.letter(i).satisfies(*p),
            Formula::NotProp(p) => !w.letter(i).satisfies(*p),
            Formula::And(a, b) => bounded(a, w, i, horizon) && bounded(b, w, i, horizon),
            Formula::Or(a, b) => bounded(a, w, i, horizon) || bounded(b, w, i, horizon),
            Formula::Next(a) => bounded(a, w, i + 1, horizon),
            Formula::Until(a, b) => (i..i + horizon)
                .any(|k| bounded(b, w, k, horizon) && (i..k).all(|l| bounded(a, w, l, horizon))),
            Formula::Release(a, b) => {
                (i..i + horizon).all(|k| bounded(b, w, k, horizon))
                    || (i..i + horizon)
                        .any(|k| bounded(a, w, k, horizon) && (i..=k).all(|l| bounded(b, w, l, horizon)))
            }
        }
    }

    #[test]
    fn agrees_with_bounded_unfolding() {
        let r = Interpretation::raw(&["a", "b", "c", "d"]).unwrap();
        let formulas = ["(a & F b) | (c & G F d)", "a U (b R c)", "G (a | X b)", "F G a", "(a R b) U X c"];
        for text in formulas {
            let phi = parse(text, &r).unwrap();
            for w in all_lassos(&r, 3) {
                // Positions repeat with period |v| after |u|; a horizon of
                // |u| + |v| per nesting level suffices for these depths.
                let horizon = 2 * w.positions() + 2;
                assert_eq!(eval_lasso(&phi, &w), bounded(&phi, &w, 0, horizon), "{text} on {w:?}");
            }
        }
    }

    #[test]
    fn dual_complements() {
        let v = Interpretation::valuation(&["a", "b"]).unwrap();
        for text in ["a U b", "G F a", "X (a R !b)", "F (a & X b)"] {
            let phi = parse(text, &v).unwrap();
            let neg = phi.dual();
            for w in all_lassos(&v, 4) {
                assert_ne!(eval_lasso(&phi, &w), eval_lasso(&neg, &w));
            }
        }
    }

    #[test]
    fn loop_entry_positions_agree() {
        let v = Interpretation::valuation(&["a", "b"]).unwrap();
        let phi = parse("a U (b & X G a)", &v).unwrap();
        for w in all_lassos(&v, 4) {
            let unrolled =
                LassoWord::new(w.prefix().iter().chain(w.cycle()).copied().collect(), w.cycle().to_vec())
                    .unwrap();
            let at_loop = eval_lasso_at(&phi, &w, w.prefix().len());
            let at_second_loop = eval_lasso_at(&phi, &unrolled, w.positions());
            assert_eq!(at_loop, at_second_loop);
        }
    }

    #[test]
    fn eventually_matches_some_position() {
        let v = Interpretation::valuation(&["a", "b"]).unwrap();
        let inner = parse("a & X b", &v).unwrap();
        let f = Formula::eventually(inner.clone());
        for w in all_lassos(&v, 4) {
            let table = satisfaction_table(&inner, &w);
            assert_eq!(eval_lasso(&f, &w), table.iter().any(|&x| x));
        }
    }
}
