//! An LTν engine shared between threads.

use std::sync::{Arc, Mutex, MutexGuard};

use partial_rv_core::ltnu::{Engine, LtnuError, LtnuGeneralisedMonitor, Term, TermId};
use partial_rv_core::{Event, Interpretation, Verdict6};

/// A cloneable handle to one [`Engine`]; its memo tables only grow, so
/// every clone sees the results computed through the others.
#[derive(Clone)]
pub struct SharedEngine(Arc<Mutex<Engine>>);

impl SharedEngine {
    pub fn new(interp: &Interpretation) -> SharedEngine {
        SharedEngine(Arc::new(Mutex::new(Engine::new(interp))))
    }

    pub fn lock(&self) -> MutexGuard<'_, Engine> {
        self.0.lock().unwrap_or_else(|e| e.into_inner())
    }

    pub fn intern(&self, t: &Term) -> TermId {
        self.lock().intern(t)
    }

    pub fn is_valid(&self, t: TermId) -> bool {
        self.lock().is_valid(t)
    }

    /// `⊢ a | b`.
    pub fn covers(&self, a: TermId, b: TermId) -> bool {
        let mut e = self.lock();
        let both = e.or(a, b);
        e.is_valid(both)
    }

    pub fn generalised(&self, safety: TermId, cosafety: TermId) -> Result<SharedMonitor, LtnuError> {
        let inner = LtnuGeneralisedMonitor::new(&mut self.lock(), safety, cosafety)?;
        Ok(SharedMonitor { engine: self.clone(), inner })
    }
}

/// A generalised LTν monitor stepping through a [`SharedEngine`].
#[derive(Clone)]
pub struct SharedMonitor {
    engine: SharedEngine,
    inner: LtnuGeneralisedMonitor,
}

impl SharedMonitor {
    pub fn verdict(&self) -> Verdict6 {
        self.inner.verdict()
    }

    pub fn step(&mut self, event: Event) -> Result<Verdict6, LtnuError> {
        self.inner.step(&mut self.engine.lock(), event)
    }

    /// Verdicts after each event; the lock is held for the whole trace.
    pub fn run(&mut self, trace: &[Event]) -> Result<Vec<Verdict6>, LtnuError> {
        let mut engine = self.engine.lock();
        trace.iter().map(|&e| self.inner.step(&mut engine, e)).collect()
    }

    pub fn step_index(&mut self, event: usize) -> Result<Verdict6, LtnuError> {
        self.inner.step_index(&mut self.engine.lock(), event)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use partial_rv_core::ltnu::parse_term;

    #[test]
    fn monitors_share_memo_tables_across_threads() {
        let i = Interpretation::raw(&["a", "b", "c", "d"]).unwrap();
        let engine = SharedEngine::new(&i);
        let ts = engine.intern(&parse_term("a | c", &i).unwrap());
        let tc = engine.intern(&parse_term("~a | (nu X. ~b & o X)", &i).unwrap());
        assert!(engine.covers(ts, tc));
        let handles: Vec<_> = ["c", "b", "a"]
            .into_iter()
            .map(|name| {
                let mut m = engine.generalised(ts, tc).unwrap();
                let e = i.parse_event(name).unwrap();
                std::thread::spawn(move || m.step(e).unwrap())
            })
            .collect();
        let verdicts: Vec<Verdict6> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        assert_eq!(verdicts, [Verdict6::Giveup, Verdict6::No, Verdict6::UnknownYes]);
    }
}
