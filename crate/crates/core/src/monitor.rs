//! Generalised monitors synthesised from LTL.
//!
//! The pipeline for one completion monitor is
//! `translate → safety_close → determinize → label_monitor`. Running it on
//! `φ` gives the safety-completion monitor; running it on `dual(φ)` gives a
//! monitor for the safety completion of the complement, whose inverted
//! verdicts are those of the cosafety-completion monitor of `φ`. The two are
//! combined in an eagerly built product.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::alphabet::{AlphabetError, Event, Interpretation};
use crate::automata::{backward_reachable, MonitorDfa, StateId};
use crate::ltl::Formula;
use crate::ltl2nba::translate;
use crate::verdict::{combine, InconsistentVerdicts, Verdict3, Verdict6};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SynthesisOptions {
    /// Minimise the component monitors and the product.
    pub minimize: bool,
}

/// The three-valued monitor of the safety completion of `⟦φ⟧`.
pub fn completion_monitor(phi: &Formula, interp: &Interpretation, minimize: bool) -> MonitorDfa {
    let closed = translate(phi, interp).safety_close();
    let monitor = closed.to_nfa().determinize().label_monitor();
    if minimize {
        monitor.minimize()
    } else {
        monitor
    }
}

/// A deterministic automaton whose states carry six-valued verdicts.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GeneralisedMonitor {
    interp: Interpretation,
    num_events: usize,
    delta: Vec<StateId>,
    labels: Vec<Verdict6>,
    /// Safety-completion and complement-branch verdicts of every state.
    components: Vec<(Verdict3, Verdict3)>,
}

impl GeneralisedMonitor {
    /// Synthesises the generalised monitor of `phi`.
    pub fn synthesize(
        phi: &Formula,
        interp: &Interpretation,
        options: SynthesisOptions,
    ) -> Result<Self, InconsistentVerdicts> {
        let safety = completion_monitor(phi, interp, options.minimize);
        let complement = completion_monitor(&phi.dual(), interp, options.minimize);
        let product = GeneralisedMonitor::product(interp, &safety, &complement)?;
        Ok(if options.minimize { product.minimize() } else { product })
    }

    /// Product of a safety-completion monitor and a complement-branch
    /// monitor; states are numbered in breadth-first order.
    pub fn product(
        interp: &Interpretation,
        safety: &MonitorDfa,
        complement: &MonitorDfa,
    ) -> Result<Self, InconsistentVerdicts> {
        let k = interp.num_events();
        let mut ids: BTreeMap<(StateId, StateId), StateId> = BTreeMap::new();
        let mut pairs = vec![(safety.dfa().initial(), complement.dfa().initial())];
        ids.insert(pairs[0], 0);
        let mut delta = Vec::new();
        let mut labels = Vec::new();
        let mut components = Vec::new();
        let mut next = 0;
        while next < pairs.len() {
            let (s, c) = pairs[next];
            let (ls, lc) = (safety.label(s), complement.label(c));
            labels.push(combine(ls, lc.invert())?);
            components.push((ls, lc));
            for e in 0..k {
                let target = (safety.dfa().next(s, e), complement.dfa().next(c, e));
                let id = *ids.entry(target).or_insert_with(|| {
                    pairs.push(target);
                    pairs.len() - 1
                });
                delta.push(id);
            }
            next += 1;
        }
        Ok(GeneralisedMonitor { interp: interp.clone(), num_events: k, delta, labels, components })
    }

    fn minimize(&self) -> GeneralisedMonitor {
        let classes: Vec<usize> = self.labels.iter().map(|&l| l as usize).collect();
        let (block, n) =
            crate::automata::refine_partition(self.num_states(), self.num_events, &self.delta, &classes);
        // Renumber blocks breadth-first from the initial state.
        let mut order = vec![usize::MAX; n];
        let mut reps = vec![0];
        order[block[0]] = 0;
        let mut head = 0;
        while head < reps.len() {
            let q = reps[head];
            head += 1;
            for e in 0..self.num_events {
                let t = self.next(q, e);
                if order[block[t]] == usize::MAX {
                    order[block[t]] = reps.len();
                    reps.push(t);
                }
            }
        }
        let delta = reps
            .iter()
            .flat_map(|&q| (0..self.num_events).map(move |e| (q, e)))
            .map(|(q, e)| order[block[self.next(q, e)]])
            .collect();
        GeneralisedMonitor {
            interp: self.interp.clone(),
            num_events: self.num_events,
            delta,
            labels: reps.iter().map(|&q| self.labels[q]).collect(),
            components: reps.iter().map(|&q| self.components[q]).collect(),
        }
    }

    pub fn interpretation(&self) -> &Interpretation {
        &self.interp
    }

    pub fn num_states(&self) -> usize {
        self.labels.len()
    }

    pub fn initial(&self) -> StateId {
        0
    }

    pub fn next(&self, q: StateId, event: usize) -> StateId {
        self.delta[q * self.num_events + event]
    }

    pub fn label(&self, q: StateId) -> Verdict6 {
        self.labels[q]
    }

    /// Verdicts of the safety-completion monitor and of the monitor built
    /// from the dual formula at state `q`.
    pub fn components(&self, q: StateId) -> (Verdict3, Verdict3) {
        self.components[q]
    }

    pub fn cursor(&self) -> Cursor<'_> {
        Cursor { monitor: self, state: 0, halted: self.labels[0].is_final() }
    }

    /// Verdict after each event of `trace`.
    pub fn run(&self, trace: &[Event]) -> Result<Vec<Verdict6>, AlphabetError> {
        let mut cursor = self.cursor();
        trace.iter().map(|&e| cursor.step(e)).collect()
    }

    /// Whether no state carries `giveup`. Every state of the product is
    /// reachable, so this decides monitorability of the property.
    pub fn is_monitorable(&self) -> bool {
        !self.labels.contains(&Verdict6::Giveup)
    }

    /// Whether a state with a final verdict is reachable from every state.
    pub fn always_reaches_final(&self) -> bool {
        let succ: Vec<Vec<usize>> =
            (0..self.num_states()).map(|q| (0..self.num_events).map(|e| self.next(q, e)).collect()).collect();
        let finals: Vec<bool> = self.labels.iter().map(|l| l.is_final()).collect();
        backward_reachable(&succ, &finals).iter().all(|&r| r)
    }

    /// Whether verdicts only grow in the information order along
    /// transitions.
    pub fn is_impartial(&self) -> bool {
        (0..self.num_states())
            .all(|q| (0..self.num_events).all(|e| self.labels[q].leq(self.labels[self.next(q, e)])))
    }
}

/// Stepping state over a [`GeneralisedMonitor`]. Stops moving once a final
/// verdict (`yes`, `no` or `giveup`) is reached.
#[derive(Clone, Debug)]
pub struct Cursor<'a> {
    monitor: &'a GeneralisedMonitor,
    state: StateId,
    halted: bool,
}

impl Cursor<'_> {
    pub fn step(&mut self, event: Event) -> Result<Verdict6, AlphabetError> {
        let e = self.monitor.interp.event_index(event).ok_or(AlphabetError::UnknownEvent)?;
        Ok(self.step_index(e))
    }

    pub fn step_index(&mut self, event: usize) -> Verdict6 {
        if !self.halted {
            self.state = self.monitor.next(self.state, event);
            self.halted = self.monitor.labels[self.state].is_final();
        }
        self.verdict()
    }

    pub fn verdict(&self) -> Verdict6 {
        self.monitor.labels[self.state]
    }

    pub fn state(&self) -> StateId {
        self.state
    }

    pub fn is_halted(&self) -> bool {
        self.halted
    }
}
