//! Ultimately periodic words `u·v^ω`.

use alloc::vec::Vec;

use crate::alphabet::{Event, Interpretation};

/// The infinite word `prefix · loop^ω`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LassoWord {
    prefix: Vec<Event>,
    cycle: Vec<Event>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LassoError {
    #[error("the loop of a lasso word must be nonempty")]
    EmptyLoop,
}

impl LassoWord {
    pub fn new(prefix: Vec<Event>, cycle: Vec<Event>) -> Result<Self, LassoError> {
        if cycle.is_empty() {
            return Err(LassoError::EmptyLoop);
        }
        Ok(LassoWord { prefix, cycle })
    }

    pub fn prefix(&self) -> &[Event] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[Event] {
        &self.cycle
    }

    /// Number of distinct positions, `|u| + |v|`.
    pub fn positions(&self) -> usize {
        self.prefix.len() + self.cycle.len()
    }

    /// Successor of a position, folding `|u| + |v|` back onto `|u|`.
    pub fn succ(&self, pos: usize) -> usize {
        if pos + 1 < self.positions() {
            pos + 1
        } else {
            self.prefix.len()
        }
    }

    /// Letter at a position in `0..positions()`.
    pub fn at(&self, pos: usize) -> Event {
        if pos < self.prefix.len() {
            self.prefix[pos]
        } else {
            self.cycle[pos - self.prefix.len()]
        }
    }

    /// The `i`-th letter of the infinite word.
    pub fn letter(&self, i: usize) -> Event {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.cycle[(i - self.prefix.len()) % self.cycle.len()]
        }
    }

    /// Whether `u` is a prefix of the infinite word.
    pub fn has_prefix(&self, u: &[Event]) -> bool {
        u.iter().enumerate().all(|(i, &e)| self.letter(i) == e)
    }

    pub fn is_valid_for(&self, interp: &Interpretation) -> bool {
        self.prefix.iter().chain(&self.cycle).all(|&e| interp.event_index(e).is_some())
    }

    /// Canonical representative of the denoted ω-word: the loop is reduced
    /// to its primitive root and rotated so that the prefix is as short as
    /// possible. Two lassos denote the same ω-word iff their canonical forms
    /// are equal.
    pub fn canonical(&self) -> LassoWord {
        let mut cycle = primitive_root(&self.cycle).to_vec();
        let mut prefix = self.prefix.clone();
        while let (Some(&p), Some(&c)) = (prefix.last(), cycle.last()) {
            if p != c {
                break;
            }
            prefix.pop();
            cycle.rotate_right(1);
        }
        LassoWord { prefix, cycle }
    }
}

fn primitive_root(v: &[Event]) -> &[Event] {
    let n = v.len();
    (1..=n).find(|&d| n.is_multiple_of(d) && (d..n).all(|i| v[i] == v[i - d])).map(|d| &v[..d]).unwrap_or(v)
}

/// Every lasso `(u, v)` with `1 <= |v|` and `|u| + |v| <= max_positions`
/// over the events of `interp`, in a fixed order.
///
/// Different lassos may denote the same ω-word; use
/// [`LassoWord::canonical`] to deduplicate.
pub fn all_lassos(interp: &Interpretation, max_positions: usize) -> Vec<LassoWord> {
    let events: Vec<Event> = interp.events().collect();
    let mut out = Vec::new();
    for total in 1..=max_positions {
        for word in all_words(&events, total) {
            for split in 0..total {
                out.push(LassoWord { prefix: word[..split].to_vec(), cycle: word[split..].to_vec() });
            }
        }
    }
    out
}

/// Every word of exactly length `len` over `events`, in lexicographic
/// order of event positions.
pub fn all_words(events: &[Event], len: usize) -> Vec<Vec<Event>> {
    let mut out: Vec<Vec<Event>> = alloc::vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * events.len());
        for w in &out {
            for &e in events {
                let mut w2 = w.clone();
                w2.push(e);
                next.push(w2);
            }
        }
        out = next;
    }
    out
}

/// Every word of length at most `max_len`, shortest first.
pub fn all_words_up_to(events: &[Event], max_len: usize) -> Vec<Vec<Event>> {
    (0..=max_len).flat_map(|l| all_words(events, l)).collect()
}
