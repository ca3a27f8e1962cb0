//! Agreement between the automaton pipeline and the LTν pipeline.
//!
//! Both monitors of a formula are built from its Büchi automaton: the
//! automaton one by subset construction, the LTν one by encoding the safety
//! closures of the automata for `φ` and its dual as terms.

use partial_rv_core::alphabet::AlphabetError;
use partial_rv_core::encoder::{encode, enforce_property1};
use partial_rv_core::ltl2nba::translate;
use partial_rv_core::ltnu::{LtnuError, Term};
use partial_rv_core::monitor::{GeneralisedMonitor, SynthesisOptions};
use partial_rv_core::{Event, Formula, InconsistentVerdicts, Interpretation, Verdict6};

use crate::shared::SharedEngine;

/// `(t_S, t_coS)` for `phi`.
pub fn ltnu_pair(phi: &Formula, interp: &Interpretation) -> (Term, Term) {
    let enc = |f: &Formula| encode(&enforce_property1(&translate(f, interp)).automaton, interp);
    (enc(phi), enc(&phi.dual()))
}

#[derive(Debug, thiserror::Error)]
pub enum CrosscheckError {
    #[error(transparent)]
    Synthesis(#[from] InconsistentVerdicts),
    #[error(transparent)]
    Ltnu(#[from] LtnuError),
    #[error(transparent)]
    Alphabet(#[from] AlphabetError),
    #[error("verdicts differ on trace {trace:?}: automaton {dfa:?}, terms {ltnu:?}")]
    Mismatch { trace: Vec<Event>, dfa: Vec<Verdict6>, ltnu: Vec<Verdict6> },
}

/// Runs both monitors of `phi` on every trace and compares the verdict
/// streams.
pub fn compare(phi: &Formula, interp: &Interpretation, traces: &[Vec<Event>]) -> Result<(), CrosscheckError> {
    let dfa = GeneralisedMonitor::synthesize(phi, interp, SynthesisOptions::default())?;
    let engine = SharedEngine::new(interp);
    let (ts, tc) = ltnu_pair(phi, interp);
    let (ts, tc) = (engine.intern(&ts), engine.intern(&tc));
    let fresh = engine.generalised(ts, tc)?;
    for trace in traces {
        let a = dfa.run(trace)?;
        let b = fresh.clone().run(trace)?;
        if a != b {
            return Err(CrosscheckError::Mismatch { trace: trace.clone(), dfa: a, ltnu: b });
        }
    }
    Ok(())
}
