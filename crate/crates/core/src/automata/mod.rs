//! Explicit-alphabet automata: Büchi (NBA), finite-word (NFA/DFA) and
//! verdict-labelled DFA monitors.
//!
//! Alphabets are the dense event indices `0..num_events` of an
//! [`Interpretation`]; an automaton does not own its interpretation, the
//! caller keeps the two consistent.

mod graph;
mod minimize;

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

pub use graph::{accepting_cycle_vertices, backward_reachable, forward_reachable, scc};
pub use minimize::refine_partition;

use crate::alphabet::Interpretation;
use crate::lasso::LassoWord;
use crate::verdict::Verdict3;

pub type StateId = usize;

/// Nondeterministic Büchi automaton `⟨Q, Σ, δ, Q0, F⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Nba {
    num_events: usize,
    /// `delta[q][e]`, sorted and deduplicated.
    delta: Vec<Vec<Vec<StateId>>>,
    initial: Vec<StateId>,
    accepting: Vec<bool>,
}

/// The same transition structure read as a finite-word automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa {
    inner: Nba,
}

/// Total deterministic automaton over finite words.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Dfa {
    num_events: usize,
    /// `delta[q * num_events + e]`
    delta: Vec<StateId>,
    initial: StateId,
    accepting: Vec<bool>,
    sink: Option<StateId>,
}

/// A DFA whose states carry three-valued verdicts.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MonitorDfa {
    dfa: Dfa,
    labels: Vec<Verdict3>,
}

impl Nba {
    /// An automaton with `num_states` states, no transitions, no initial and
    /// no accepting states.
    pub fn new(num_states: usize, num_events: usize) -> Nba {
        Nba {
            num_events,
            delta: vec![vec![Vec::new(); num_events]; num_states],
            initial: Vec::new(),
            accepting: vec![false; num_states],
        }
    }

    pub fn add_state(&mut self) -> StateId {
        self.delta.push(vec![Vec::new(); self.num_events]);
        self.accepting.push(false);
        self.delta.len() - 1
    }

    /// # Panics
    /// If a state or the event is out of range.
    pub fn add_transition(&mut self, from: StateId, event: usize, to: StateId) {
        assert!(to < self.num_states(), "target state {to} out of range");
        let succ = &mut self.delta[from][event];
        if let Err(pos) = succ.binary_search(&to) {
            succ.insert(pos, to);
        }
    }

    pub fn set_initial(&mut self, q: StateId) {
        assert!(q < self.num_states());
        if let Err(pos) = self.initial.binary_search(&q) {
            self.initial.insert(pos, q);
        }
    }

    pub fn set_accepting(&mut self, q: StateId, accepting: bool) {
        self.accepting[q] = accepting;
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn num_events(&self) -> usize {
        self.num_events
    }

    pub fn successors(&self, q: StateId, event: usize) -> &[StateId] {
        &self.delta[q][event]
    }

    pub fn initial(&self) -> &[StateId] {
        &self.initial
    }

    pub fn is_accepting(&self, q: StateId) -> bool {
        self.accepting[q]
    }

    pub fn accepting_states(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.num_states()).filter(|&q| self.accepting[q])
    }

    pub fn num_transitions(&self) -> usize {
        self.delta.iter().flatten().map(Vec::len).sum()
    }

    /// Successor lists with event labels forgotten.
    pub fn successor_graph(&self) -> Vec<Vec<usize>> {
        self.delta
            .iter()
            .map(|by_event| {
                let mut succ: Vec<usize> = by_event.iter().flatten().copied().collect();
                succ.sort_unstable();
                succ.dedup();
                succ
            })
            .collect()
    }

    /// `{ q' | q ∈ states, q' ∈ δ(q, e) }`, sorted.
    pub fn post(&self, states: &[StateId], event: usize) -> Vec<StateId> {
        let mut out: Vec<StateId> =
            states.iter().flat_map(|&q| self.delta[q][event].iter().copied()).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    fn live_mask(&self) -> Vec<bool> {
        let succ = self.successor_graph();
        let on_cycle = accepting_cycle_vertices(&succ, &self.accepting);
        backward_reachable(&succ, &on_cycle)
    }

    /// States with a nonempty language: those that can reach a cycle
    /// through an accepting state.
    pub fn nonempty_states(&self) -> Vec<StateId> {
        let live = self.live_mask();
        (0..self.num_states()).filter(|&q| live[q]).collect()
    }

    /// `L(A) = ∅`.
    pub fn is_empty(&self) -> bool {
        let live = self.live_mask();
        !self.initial.iter().any(|&q| live[q])
    }

    /// Safety closure: deletes every state with an empty language and makes
    /// every remaining state accepting. The result accepts the safety
    /// completion of `L(self)`.
    pub fn safety_close(&self) -> Nba {
        let live = self.live_mask();
        self.restrict(&live, true)
    }

    /// Keeps the states marked in `keep` (renumbered in order), optionally
    /// marking all of them accepting.
    fn restrict(&self, keep: &[bool], all_accepting: bool) -> Nba {
        let mut renumber = vec![usize::MAX; self.num_states()];
        let mut next = 0;
        for q in 0..self.num_states() {
            if keep[q] {
                renumber[q] = next;
                next += 1;
            }
        }
        let mut out = Nba::new(next, self.num_events);
        for q in 0..self.num_states() {
            if !keep[q] {
                continue;
            }
            let nq = renumber[q];
            out.accepting[nq] = all_accepting || self.accepting[q];
            for e in 0..self.num_events {
                out.delta[nq][e] =
                    self.delta[q][e].iter().filter(|&&t| keep[t]).map(|&t| renumber[t]).collect();
            }
        }
        out.initial = self.initial.iter().filter(|&&q| keep[q]).map(|&q| renumber[q]).collect();
        out
    }

    /// Removes states that are unreachable from the initial states.
    pub fn trim_unreachable(&self) -> Nba {
        let reach = forward_reachable(&self.successor_graph(), &self.initial);
        self.restrict(&reach, false)
    }

    /// Whether `u·v^ω ∈ L(A)`.
    ///
    /// Searches the product of the automaton with the positions of the lasso
    /// for a reachable cycle through an accepting state. Letters that are
    /// not events of `interp` have no transitions.
    pub fn accepts_lasso(&self, w: &LassoWord, interp: &Interpretation) -> bool {
        let n = w.positions();
        let node = |q: StateId, i: usize| q * n + i;
        let letters: Vec<Option<usize>> = (0..n).map(|i| interp.event_index(w.at(i))).collect();
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); self.num_states() * n];
        let mut accepting = vec![false; self.num_states() * n];
        for q in 0..self.num_states() {
            for i in 0..n {
                accepting[node(q, i)] = self.accepting[q];
                if let Some(e) = letters[i] {
                    let j = w.succ(i);
                    succ[node(q, i)] = self.delta[q][e].iter().map(|&t| node(t, j)).collect();
                }
            }
        }
        let start: Vec<usize> = self.initial.iter().map(|&q| node(q, 0)).collect();
        let reach = forward_reachable(&succ, &start);
        let on_cycle = accepting_cycle_vertices(&succ, &accepting);
        reach.iter().zip(&on_cycle).any(|(&r, &c)| r && c)
    }

    pub fn to_nfa(&self) -> Nfa {
        Nfa { inner: self.clone() }
    }
}

impl Nfa {
    pub fn from_nba(nba: Nba) -> Nfa {
        Nfa { inner: nba }
    }

    pub fn as_nba(&self) -> &Nba {
        &self.inner
    }

    pub fn num_states(&self) -> usize {
        self.inner.num_states()
    }

    /// Whether the finite word (given as event indices) is accepted.
    pub fn accepts(&self, word: &[usize]) -> bool {
        let mut cur = self.inner.initial.clone();
        for &e in word {
            cur = self.inner.post(&cur, e);
        }
        cur.iter().any(|&q| self.inner.accepting[q])
    }

    /// Subset construction from the initial set. A subset is accepting iff
    /// it contains an accepting state; the empty subset is the rejecting
    /// sink. Only reachable subsets are built.
    pub fn determinize(&self) -> Dfa {
        let nba = &self.inner;
        let k = nba.num_events;
        let mut index: BTreeMap<Vec<StateId>, StateId> = BTreeMap::new();
        let mut subsets: Vec<Vec<StateId>> = Vec::new();
        let mut delta: Vec<StateId> = Vec::new();

        let start = nba.initial.clone();
        index.insert(start.clone(), 0);
        subsets.push(start);
        let mut next = 0;
        while next < subsets.len() {
            for e in 0..k {
                let target = nba.post(&subsets[next], e);
                let id = match index.get(&target) {
                    Some(&id) => id,
                    None => {
                        let id = subsets.len();
                        index.insert(target.clone(), id);
                        subsets.push(target);
                        id
                    }
                };
                delta.push(id);
            }
            next += 1;
        }
        let accepting = subsets.iter().map(|s| s.iter().any(|&q| nba.accepting[q])).collect();
        let sink = index.get(&Vec::new()).copied();
        Dfa { num_events: k, delta, initial: 0, accepting, sink }
    }
}

impl Dfa {
    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    pub fn num_events(&self) -> usize {
        self.num_events
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn next(&self, q: StateId, event: usize) -> StateId {
        self.delta[q * self.num_events + event]
    }

    pub fn is_accepting(&self, q: StateId) -> bool {
        self.accepting[q]
    }

    /// The rejecting absorbing state standing for the empty subset, if it
    /// was reached during determinisation.
    pub fn sink(&self) -> Option<StateId> {
        self.sink
    }

    pub fn run(&self, word: &[usize]) -> StateId {
        word.iter().fold(self.initial, |q, &e| self.next(q, e))
    }

    pub fn successor_graph(&self) -> Vec<Vec<usize>> {
        (0..self.num_states())
            .map(|q| {
                let mut s: Vec<usize> = (0..self.num_events).map(|e| self.next(q, e)).collect();
                s.sort_unstable();
                s.dedup();
                s
            })
            .collect()
    }

    /// Labels every state: `yes` if only accepting states are reachable
    /// from it, `no` if no accepting state is, `unknown` otherwise.
    pub fn label_monitor(&self) -> MonitorDfa {
        let succ = self.successor_graph();
        let rejecting: Vec<bool> = self.accepting.iter().map(|a| !a).collect();
        let reaches_accepting = backward_reachable(&succ, &self.accepting);
        let reaches_rejecting = backward_reachable(&succ, &rejecting);
        let labels = (0..self.num_states())
            .map(|q| match (reaches_accepting[q], reaches_rejecting[q]) {
                (true, false) => Verdict3::Yes,
                (false, _) => Verdict3::No,
                (true, true) => Verdict3::Unknown,
            })
            .collect();
        MonitorDfa { dfa: self.clone(), labels }
    }

    /// Language-preserving minimisation (Hopcroft partition refinement).
    pub fn minimize(&self) -> Dfa {
        let classes: Vec<usize> = self.accepting.iter().map(|&a| a as usize).collect();
        let (block, _) = refine_partition(self.num_states(), self.num_events, &self.delta, &classes);
        self.quotient(&block)
    }

    /// Quotient by a congruence given as a block index per state; block
    /// numbering is rewritten in order of first visit from the initial state.
    fn quotient(&self, block: &[usize]) -> Dfa {
        let k = self.num_events;
        let num_blocks = block.iter().max().map_or(0, |m| m + 1);
        let mut rep = vec![usize::MAX; num_blocks];
        for q in (0..self.num_states()).rev() {
            rep[block[q]] = q;
        }
        // BFS numbering for a canonical result.
        let mut order = vec![usize::MAX; num_blocks];
        let mut queue = vec![block[self.initial]];
        order[block[self.initial]] = 0;
        let mut head = 0;
        while head < queue.len() {
            let b = queue[head];
            head += 1;
            for e in 0..k {
                let t = block[self.next(rep[b], e)];
                if order[t] == usize::MAX {
                    order[t] = queue.len();
                    queue.push(t);
                }
            }
        }
        let mut delta = Vec::with_capacity(queue.len() * k);
        let mut accepting = Vec::with_capacity(queue.len());
        for &b in &queue {
            for e in 0..k {
                delta.push(order[block[self.next(rep[b], e)]]);
            }
            accepting.push(self.accepting[rep[b]]);
        }
        let sink = self.sink.map(|s| order[block[s]]);
        Dfa { num_events: k, delta, initial: 0, accepting, sink }
    }
}

impl MonitorDfa {
    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    pub fn label(&self, q: StateId) -> Verdict3 {
        self.labels[q]
    }

    pub fn labels(&self) -> &[Verdict3] {
        &self.labels
    }

    pub fn num_states(&self) -> usize {
        self.dfa.num_states()
    }

    /// Verdict after reading a finite word of event indices.
    pub fn verdict(&self, word: &[usize]) -> Verdict3 {
        self.labels[self.dfa.run(word)]
    }

    /// Merges states with equal verdicts and equivalent futures.
    pub fn minimize(&self) -> MonitorDfa {
        let classes: Vec<usize> = (0..self.num_states())
            .map(|q| self.labels[q] as usize * 2 + self.dfa.accepting[q] as usize)
            .collect();
        let (block, _) = refine_partition(self.num_states(), self.dfa.num_events, &self.dfa.delta, &classes);
        let dfa = self.dfa.quotient(&block);
        // Recover labels through any member of each block.
        let mut labels = vec![Verdict3::Unknown; dfa.num_states()];
        let mut q_of = vec![usize::MAX; dfa.num_states()];
        let mut stack = vec![(self.dfa.initial, dfa.initial)];
        while let Some((old, new)) = stack.pop() {
            if q_of[new] != usize::MAX {
                continue;
            }
            q_of[new] = old;
            labels[new] = self.labels[old];
            for e in 0..dfa.num_events {
                stack.push((self.dfa.next(old, e), dfa.next(new, e)));
            }
        }
        MonitorDfa { dfa, labels }
    }
}
