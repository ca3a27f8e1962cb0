//! Monitors driven by ν-calculus terms.
//!
//! A monitor keeps the set of residuals of its term along the events read
//! so far. Stepping and verdicts are memoised in the [`Engine`], which is
//! passed to every call so that one engine can serve many monitors.

use super::engine::{Engine, SetId, TermId};
use crate::alphabet::Event;
use crate::verdict::{combine, InconsistentVerdicts, Verdict3, Verdict6};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LtnuError {
    #[error("the two terms do not cover every behaviour (`t_S | t_coS` is not provable)")]
    CoverageCheckFailed,
    #[error("event is not in the alphabet")]
    UnknownEvent,
    #[error(transparent)]
    Inconsistent(#[from] InconsistentVerdicts),
}

fn event_index(engine: &Engine, event: Event) -> Result<usize, LtnuError> {
    engine.interpretation().event_index(event).ok_or(LtnuError::UnknownEvent)
}

/// Three-valued monitor of a single term: `yes` once every continuation
/// satisfies the term, `no` once the residuals are stuck.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LtnuMonitor {
    set: SetId,
    verdict: Verdict3,
}

impl LtnuMonitor {
    pub fn new(engine: &mut Engine, t: TermId) -> LtnuMonitor {
        let set = engine.set(&[t]);
        LtnuMonitor { set, verdict: engine.set_verdict(set) }
    }

    pub fn verdict(&self) -> Verdict3 {
        self.verdict
    }

    /// The current residual set.
    pub fn residuals(&self) -> SetId {
        self.set
    }

    pub fn step(&mut self, engine: &mut Engine, event: Event) -> Result<Verdict3, LtnuError> {
        let e = event_index(engine, event)?;
        Ok(self.step_index(engine, e))
    }

    pub fn step_index(&mut self, engine: &mut Engine, event: usize) -> Verdict3 {
        if !self.verdict.is_conclusive() {
            self.set = engine.step_set(self.set, event);
            self.verdict = engine.set_verdict(self.set);
        }
        self.verdict
    }
}

/// Generalised monitor from a pair `(t_S, t_coS)` whose disjunction is
/// valid: `t_S` describes the safety completion, `t_coS` the complement
/// of the cosafety completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LtnuGeneralisedMonitor {
    safety: LtnuMonitor,
    cosafety: LtnuMonitor,
    verdict: Verdict6,
}

impl LtnuGeneralisedMonitor {
    pub fn new(
        engine: &mut Engine,
        safety: TermId,
        cosafety: TermId,
    ) -> Result<LtnuGeneralisedMonitor, LtnuError> {
        let both = engine.or(safety, cosafety);
        if !engine.is_valid(both) {
            return Err(LtnuError::CoverageCheckFailed);
        }
        let safety = LtnuMonitor::new(engine, safety);
        let cosafety = LtnuMonitor::new(engine, cosafety);
        let verdict = combine(safety.verdict, cosafety.verdict.invert())?;
        Ok(LtnuGeneralisedMonitor { safety, cosafety, verdict })
    }

    pub fn verdict(&self) -> Verdict6 {
        self.verdict
    }

    /// Verdicts of the two component monitors, as produced by the terms.
    pub fn components(&self) -> (Verdict3, Verdict3) {
        (self.safety.verdict, self.cosafety.verdict)
    }

    pub fn step(&mut self, engine: &mut Engine, event: Event) -> Result<Verdict6, LtnuError> {
        let e = event_index(engine, event)?;
        self.step_index(engine, e)
    }

    pub fn step_index(&mut self, engine: &mut Engine, event: usize) -> Result<Verdict6, LtnuError> {
        if !self.verdict.is_final() {
            let s = self.safety.step_index(engine, event);
            let c = self.cosafety.step_index(engine, event);
            self.verdict = combine(s, c.invert())?;
        }
        Ok(self.verdict)
    }
}

/// Whether every continuation of `u` is refuted by `t`: the residual set
/// after `u` is empty.
pub fn refuted_prefix(engine: &mut Engine, t: TermId, u: &[Event]) -> Result<bool, LtnuError> {
    let mut set = engine.set(&[t]);
    for &e in u {
        let e = event_index(engine, e)?;
        set = engine.step_set(set, e);
    }
    Ok(engine.set_members(set).is_empty())
}
