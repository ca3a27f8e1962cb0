//! Finite instances of the standard observation structures: words and
//! prefixes, lassos and prefixes, sets of words, and trees.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{FiniteObservationStructure, Property};
use crate::alphabet::{Event, Interpretation};
use crate::lasso::{all_lassos, all_words_up_to, LassoWord};
use crate::ltl::{eval_lasso, parse, Formula};

fn word_name(w: &[String]) -> String {
    if w.is_empty() {
        "ε".to_string()
    } else {
        w.concat()
    }
}

/// Words of length exactly `len` observed through their prefixes.
pub fn linear_words(events: &[&str], len: usize) -> FiniteObservationStructure {
    let name = |w: &[usize]| word_name(&w.iter().map(|&e| events[e].to_string()).collect::<Vec<_>>());
    let behaviours = words(events.len(), len);
    let observations: Vec<Vec<usize>> = (0..=len).flat_map(|l| words(events.len(), l)).collect();
    let mut s = FiniteObservationStructure::new(
        behaviours.iter().map(|w| name(w)).collect(),
        observations.iter().map(|w| name(w)).collect(),
    );
    for (o, u) in observations.iter().enumerate() {
        for (p, v) in observations.iter().enumerate() {
            if v.starts_with(u) {
                s.add_refine(o, p);
            }
        }
        for (a, w) in behaviours.iter().enumerate() {
            if w.starts_with(u) {
                s.add_approx(o, a);
            }
        }
    }
    s
}

/// Words of length `len` over letters `0..k`, lexicographically.
fn words(k: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = alloc::vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w: Vec<usize>| {
                (0..k).map(move |x| {
                    let mut w = w.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// Lasso words with at most `max_positions` positions, one per ω-word,
/// observed through their prefixes of length at most `max_prefix`.
#[derive(Clone, Debug)]
pub struct LassoModel {
    pub interp: Interpretation,
    pub structure: FiniteObservationStructure,
    pub lassos: Vec<LassoWord>,
    pub prefixes: Vec<Vec<Event>>,
}

impl LassoModel {
    pub fn new(interp: &Interpretation, max_positions: usize, max_prefix: usize) -> LassoModel {
        let mut lassos: Vec<LassoWord> =
            all_lassos(interp, max_positions).iter().map(LassoWord::canonical).collect();
        lassos.sort();
        lassos.dedup();
        let events: Vec<Event> = interp.events().collect();
        let prefixes = all_words_up_to(&events, max_prefix);
        let show = |w: &[Event]| word_name(&w.iter().map(|&e| interp.event_name(e)).collect::<Vec<_>>());
        let mut s = FiniteObservationStructure::new(
            lassos
                .iter()
                .map(|l| format!("{}({})", show(l.prefix()).trim_start_matches('ε'), show(l.cycle())))
                .collect(),
            prefixes.iter().map(|u| show(u)).collect(),
        );
        for (o, u) in prefixes.iter().enumerate() {
            for (p, v) in prefixes.iter().enumerate() {
                if v.starts_with(u) {
                    s.add_refine(o, p);
                }
            }
            for (a, l) in lassos.iter().enumerate() {
                if l.has_prefix(u) {
                    s.add_approx(o, a);
                }
            }
        }
        LassoModel { interp: interp.clone(), structure: s, lassos, prefixes }
    }

    /// The lassos satisfying `phi`.
    pub fn property(&self, phi: &Formula) -> Property {
        self.structure.property((0..self.lassos.len()).filter(|&a| eval_lasso(phi, &self.lassos[a])))
    }

    pub fn observation(&self, u: &[Event]) -> Option<usize> {
        self.prefixes.iter().position(|v| v == u)
    }
}

/// The formula `(a & F b) | (c & G F d)` over raw symbols `a, b, c, d`, on
/// lassos with at most three positions and prefixes of length at most two.
pub fn example5_lassos() -> (LassoModel, Formula) {
    let interp = Interpretation::raw(&["a", "b", "c", "d"]).expect("valid alphabet");
    let phi = parse("(a & F b) | (c & G F d)", &interp).expect("valid formula");
    (LassoModel::new(&interp, 3, 2), phi)
}

/// Nonempty sets of words of length two over `a, b`, observed through
/// antichains (under prefixing) of words of length one or two.
pub fn hyper_sets() -> FiniteObservationStructure {
    let traces: [&str; 6] = ["a", "b", "aa", "ab", "ba", "bb"];
    let words: [&str; 4] = ["aa", "ab", "ba", "bb"];
    let show = |members: &[&str]| format!("{{{}}}", members.join(","));
    let pick = |mask: usize, from: &[&'static str]| -> Vec<&'static str> {
        from.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &w)| w).collect()
    };
    let behaviours: Vec<Vec<&str>> = (1..16).map(|m| pick(m, &words)).collect();
    let observations: Vec<Vec<&str>> = (0..64)
        .map(|m| pick(m, &traces))
        .filter(|x| x.iter().all(|u| x.iter().all(|v| u == v || !v.starts_with(u))))
        .collect();
    let covered = |x: &[&str], y: &[&str]| x.iter().all(|u| y.iter().any(|v| v.starts_with(u)));
    let mut s = FiniteObservationStructure::new(
        behaviours.iter().map(|t| show(t)).collect(),
        observations.iter().map(|x| show(x)).collect(),
    );
    for (o, x) in observations.iter().enumerate() {
        for (p, y) in observations.iter().enumerate() {
            if covered(x, y) {
                s.add_refine(o, p);
            }
        }
        for (a, t) in behaviours.iter().enumerate() {
            if covered(x, t) {
                s.add_approx(o, a);
            }
        }
    }
    s
}

/// A finite tree of depth at most two with edges labelled by `a, b, c`,
/// stored as the set of its root paths. Path indices: `ε` is 0, `x` is
/// `1 + x`, `xy` is `4 + 3x + y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tree(pub u16);

const LETTERS: [&str; 3] = ["a", "b", "c"];

fn path_index(path: &[usize]) -> usize {
    match *path {
        [] => 0,
        [x] => 1 + x,
        [x, y] => 4 + 3 * x + y,
        _ => panic!("paths have length at most two"),
    }
}

fn path_name(i: usize) -> String {
    match i {
        0 => "ε".to_string(),
        1..=3 => LETTERS[i - 1].to_string(),
        _ => format!("{}{}", LETTERS[(i - 4) / 3], LETTERS[(i - 4) % 3]),
    }
}

impl Tree {
    /// Every tree, ordered by bitmask.
    pub fn all() -> Vec<Tree> {
        (0u16..1 << 13)
            .filter(|m| m & 1 == 1)
            .filter(|m| (4..13).all(|i| m >> i & 1 == 0 || m >> (1 + (i - 4) / 3) & 1 == 1))
            .map(Tree)
            .collect()
    }

    /// Whether the tree has a root path labelled `path` (letter indices).
    pub fn has_path(self, path: &[usize]) -> bool {
        self.0 >> path_index(path) & 1 == 1
    }

    pub fn is_subtree_of(self, other: Tree) -> bool {
        self.0 & !other.0 == 0
    }

    /// `[p1,p2,...]` listing the nonempty root paths.
    pub fn name(self) -> String {
        let paths: Vec<String> = (1..13).filter(|&i| self.0 >> i & 1 == 1).map(path_name).collect();
        format!("[{}]", paths.join(","))
    }
}

/// Trees of depth at most two together with one of the two observation
/// structures over them.
#[derive(Clone, Debug)]
pub struct BranchingModel {
    pub structure: FiniteObservationStructure,
    pub trees: Vec<Tree>,
}

impl BranchingModel {
    pub fn property(&self, pred: impl Fn(Tree) -> bool) -> Property {
        self.structure.property((0..self.trees.len()).filter(|&a| pred(self.trees[a])))
    }
}

/// Trees observed through single root paths, ordered by prefixing.
pub fn branching_traces() -> BranchingModel {
    let trees = Tree::all();
    let paths: Vec<Vec<usize>> = (0..=2).flat_map(|l| words(3, l)).collect();
    let mut s = FiniteObservationStructure::new(
        trees.iter().map(|t| t.name()).collect(),
        paths.iter().map(|w| path_name(path_index(w))).collect(),
    );
    for (o, u) in paths.iter().enumerate() {
        for (p, v) in paths.iter().enumerate() {
            if v.starts_with(u) {
                s.add_refine(o, p);
            }
        }
        for (a, t) in trees.iter().enumerate() {
            if t.has_path(u) {
                s.add_approx(o, a);
            }
        }
    }
    BranchingModel { structure: s, trees }
}

/// Trees observed through prefix-closed sets of root paths, that is,
/// through their subtrees, ordered by inclusion.
pub fn branching_sets() -> BranchingModel {
    let trees = Tree::all();
    let names: Vec<String> = trees.iter().map(|t| t.name()).collect();
    let mut s = FiniteObservationStructure::new(names.clone(), names);
    for (o, x) in trees.iter().enumerate() {
        for (p, y) in trees.iter().enumerate() {
            if x.is_subtree_of(*y) {
                s.add_refine(o, p);
                s.add_approx(o, p);
            }
        }
    }
    BranchingModel { structure: s, trees }
}

/// Trees with no root path starting with `a`.
pub fn example4_witness(model: &BranchingModel) -> Property {
    model.property(|t| !t.has_path(&[0]))
}
