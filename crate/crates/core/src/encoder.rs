//! Encoding Büchi automata as ν-calculus terms.
//!
//! The encoding of state `q` under the set `S` of states on the current
//! path is `X_q` if `q ∈ S` and otherwise
//!
//! ```text
//! nu X_q. ∨ { T(α) & o T(q', S ∪ {q}) | α ∈ E, q' ∈ δ(q, α) }
//! ```
//!
//! where `T(α)` fixes every declared proposition to its value on `α`. The
//! encoding of the automaton is the disjunction over its initial states.
//! The term describes the safety completion of the accepted language, and
//! coincides with it exactly when every state has a nonempty language, which
//! [`enforce_property1`] establishes.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::alphabet::{Event, Interpretation, Prop};
use crate::automata::{accepting_cycle_vertices, Nba, StateId};
use crate::ltnu::Term;

/// Result of [`enforce_property1`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Property1Report {
    /// The safety closure of the input: every surviving state is final and
    /// can reach a final state.
    pub automaton: Nba,
    /// Final states of the closure that do not lie on a cycle.
    pub off_cycle: Vec<StateId>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("final states not on any cycle: {states:?}")]
pub struct Property1Violation {
    pub states: Vec<StateId>,
}

impl Property1Report {
    pub fn violation(&self) -> Option<Property1Violation> {
        (!self.off_cycle.is_empty()).then(|| Property1Violation { states: self.off_cycle.clone() })
    }
}

/// Safety-closes `a` and checks that every final state lies on a cycle and
/// reaches a final state. The reachability clause holds by construction;
/// states violating the cycle clause are reported.
pub fn enforce_property1(a: &Nba) -> Property1Report {
    let automaton = a.safety_close();
    let succ = automaton.successor_graph();
    let all: Vec<bool> = (0..automaton.num_states()).map(|q| automaton.is_accepting(q)).collect();
    let on_cycle = accepting_cycle_vertices(&succ, &all);
    let off_cycle = (0..automaton.num_states()).filter(|&q| all[q] && !on_cycle[q]).collect();
    Property1Report { automaton, off_cycle }
}

/// The conjunction of literals describing exactly the event `alpha`.
pub fn event_term(alpha: Event, interp: &Interpretation) -> Term {
    Term::conj((0..interp.num_props()).map(|i| {
        let p = Prop(i as u8);
        if interp.holds(p, alpha) {
            Term::Prop(p)
        } else {
            Term::CoProp(p)
        }
    }))
}

/// Name of the variable bound for state `q`.
pub fn state_var(q: StateId) -> String {
    format!("X{q}")
}

/// Encodes `a` as a term. Disjuncts follow the event order of `interp`,
/// then successor state order.
pub fn encode(a: &Nba, interp: &Interpretation) -> Term {
    let events: Vec<Term> = interp.events().map(|e| event_term(e, interp)).collect();
    let mut path = Vec::new();
    Term::disj(a.initial().iter().map(|&q| encode_state(a, &events, q, &mut path)))
}

fn encode_state(a: &Nba, events: &[Term], q: StateId, path: &mut Vec<StateId>) -> Term {
    if path.contains(&q) {
        return Term::Var(state_var(q));
    }
    path.push(q);
    let mut disjuncts = Vec::new();
    for (e, alpha) in events.iter().enumerate() {
        for &target in a.successors(q, e) {
            let next = encode_state(a, events, target, path);
            disjuncts.push(Term::and(alpha.clone(), Term::next(next)));
        }
    }
    path.pop();
    Term::Nu(state_var(q), alloc::boxed::Box::new(Term::disj(disjuncts)))
}
