//! LTL to Büchi automata by tableau expansion.
//!
//! A state is a set of pending obligations (indices into the subformula
//! list) together with a degeneralisation counter. Expanding an obligation
//! set yields covers: the literals that the next event must satisfy, the
//! obligations passed on to the successor, and the until-subformulas that
//! were postponed rather than fulfilled. The counter waits on the until
//! subformulas in round-robin order; a state is accepting when it has
//! passed all of them.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::alphabet::Interpretation;
use crate::automata::Nba;
use crate::ltl::Formula;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Cover {
    pos: u32,
    neg: u32,
    next: Vec<usize>,
    postponed: Vec<usize>,
}

struct Closure<'a> {
    subs: Vec<&'a Formula>,
    /// `until_index[i]` is the round-robin slot of subformula `i`.
    until_index: Vec<Option<usize>>,
    num_until: usize,
}

impl<'a> Closure<'a> {
    fn new(phi: &'a Formula) -> Self {
        let subs = phi.subformulas();
        let mut num_until = 0;
        let until_index = subs
            .iter()
            .map(|f| {
                matches!(f, Formula::Until(..)).then(|| {
                    num_until += 1;
                    num_until - 1
                })
            })
            .collect();
        Closure { subs, until_index, num_until }
    }

    fn index(&self, f: &Formula) -> usize {
        self.subs.iter().position(|g| *g == f).expect("subformula in closure")
    }

    /// Obligation sets never mention `true`; a set containing `false` is
    /// kept and simply has no covers.
    fn normalise(&self, mut set: Vec<usize>) -> Vec<usize> {
        set.retain(|&i| *self.subs[i] != Formula::True);
        set.sort_unstable();
        set.dedup();
        set
    }

    fn covers(&self, obligations: &[usize]) -> Vec<Cover> {
        let mut out = BTreeSet::new();
        let start = Cover { pos: 0, neg: 0, next: Vec::new(), postponed: Vec::new() };
        self.expand(obligations.to_vec(), Vec::new(), start, &mut out);
        out.into_iter().collect()
    }

    fn expand(
        &self,
        mut todo: Vec<usize>,
        mut done: Vec<usize>,
        mut cover: Cover,
        out: &mut BTreeSet<Cover>,
    ) {
        while let Some(i) = todo.pop() {
            if done.contains(&i) {
                continue;
            }
            done.push(i);
            match self.subs[i] {
                Formula::True => {}
                Formula::False => return,
                Formula::Prop(p) => {
                    let bit = 1u32 << p.0;
                    if cover.neg & bit != 0 {
                        return;
                    }
                    cover.pos |= bit;
                }
                Formula::NotProp(p) => {
                    let bit = 1u32 << p.0;
                    if cover.pos & bit != 0 {
                        return;
                    }
                    cover.neg |= bit;
                }
                Formula::And(a, b) => {
                    todo.push(self.index(a));
                    todo.push(self.index(b));
                }
                Formula::Next(a) => cover.next.push(self.index(a)),
                Formula::Or(a, b) => {
                    let mut left = todo.clone();
                    left.push(self.index(a));
                    self.expand(left, done.clone(), cover.clone(), out);
                    todo.push(self.index(b));
                }
                Formula::Until(a, b) => {
                    let mut now = todo.clone();
                    now.push(self.index(b));
                    self.expand(now, done.clone(), cover.clone(), out);
                    todo.push(self.index(a));
                    cover.next.push(i);
                    cover.postponed.push(self.until_index[i].expect("until slot"));
                }
                Formula::Release(a, b) => {
                    let mut now = todo.clone();
                    now.push(self.index(a));
                    now.push(self.index(b));
                    self.expand(now, done.clone(), cover.clone(), out);
                    todo.push(self.index(b));
                    cover.next.push(i);
                }
            }
        }
        cover.next = self.normalise(cover.next);
        cover.postponed.sort_unstable();
        cover.postponed.dedup();
        out.insert(cover);
    }
}

/// Builds a Büchi automaton over the events of `interp` accepting exactly
/// the words satisfying `phi`.
///
/// With `m` until-subformulas and closure size `c` the automaton has at most
/// `2^c · (m + 1)` states. Only states reachable from the initial one are
/// built.
pub fn translate(phi: &Formula, interp: &Interpretation) -> Nba {
    let cl = Closure::new(phi);
    let m = cl.num_until;
    let events: Vec<u32> = interp.events().map(|e| e.0).collect();

    let mut nba = Nba::new(0, events.len());
    let mut ids: BTreeMap<(Vec<usize>, usize), usize> = BTreeMap::new();
    let mut states: Vec<(Vec<usize>, usize)> = Vec::new();
    let mut cover_cache: BTreeMap<Vec<usize>, Vec<Cover>> = BTreeMap::new();

    let mut intern = |key: (Vec<usize>, usize), nba: &mut Nba, states: &mut Vec<_>| -> usize {
        if let Some(&id) = ids.get(&key) {
            return id;
        }
        let id = nba.add_state();
        nba.set_accepting(id, key.1 == m);
        ids.insert(key.clone(), id);
        states.push(key);
        id
    };

    let root = cl.normalise(vec![cl.index(phi)]);
    let init = intern((root, 0), &mut nba, &mut states);
    nba.set_initial(init);

    let mut next = 0;
    while next < states.len() {
        let (obligations, k) = states[next].clone();
        let covers =
            cover_cache.entry(obligations.clone()).or_insert_with(|| cl.covers(&obligations)).clone();
        for cover in covers {
            let mut slot = if k == m { 0 } else { k };
            while slot < m && cover.postponed.binary_search(&slot).is_err() {
                slot += 1;
            }
            let target = intern((cover.next.clone(), slot), &mut nba, &mut states);
            for (e, &bits) in events.iter().enumerate() {
                if bits & cover.pos == cover.pos && bits & cover.neg == 0 {
                    nba.add_transition(next, e, target);
                }
            }
        }
        next += 1;
    }
    nba
}

/// Closure size and number of until-subformulas of `phi`, the parameters
/// of the state bound of [`translate`].
pub fn closure_stats(phi: &Formula) -> (usize, usize) {
    let cl = Closure::new(phi);
    (cl.subs.len(), cl.num_until)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lasso::all_lassos;
    use crate::ltl::{eval_lasso, parse};

    fn agrees(text: &str, interp: &Interpretation, max_positions: usize) {
        let phi = parse(text, interp).unwrap();
        let a = translate(&phi, interp);
        for w in all_lassos(interp, max_positions) {
            assert_eq!(a.accepts_lasso(&w, interp), eval_lasso(&phi, &w), "{text} on {w:?}");
        }
    }

    #[test]
    fn false_is_empty() {
        let v = Interpretation::valuation(&["a", "b"]).unwrap();
        let a = translate(&Formula::False, &v);
        assert!(a.is_empty());
        for w in all_lassos(&v, 4) {
            assert!(!a.accepts_lasso(&w, &v));
        }
    }

    #[test]
    fn eventually_b() {
        let v = Interpretation::valuation(&["a", "b"]).unwrap();
        agrees("F b", &v, 4);
    }

    #[test]
    fn example_formula_raw_alphabet() {
        let r = Interpretation::raw(&["a", "b", "c", "d"]).unwrap();
        agrees("(a & F b) | (c & G F d)", &r, 5);
    }

    #[test]
    fn assorted_formulas() {
        let v = Interpretation::valuation(&["a", "b"]).unwrap();
        for text in [
            "true",
            "a U b",
            "a R b",
            "G F a & G F b",
            "F G a | G F !a",
            "X X a",
            "(a U b) U (b R a)",
            "G (!a | X b)",
            "a U (b & X (a U b))",
        ] {
            agrees(text, &v, 4);
        }
    }

    #[test]
    fn state_bound() {
        let v = Interpretation::valuation(&["a", "b"]).unwrap();
        for text in ["G F a & G F b", "(a U b) U (b R a)", "F G a"] {
            let phi = parse(text, &v).unwrap();
            let (c, m) = closure_stats(&phi);
            assert!(translate(&phi, &v).num_states() <= (1 << c) * (m + 1));
        }
    }
}
