//! The observation-structure suite, checked across properties in parallel.

use partial_rv_core::obslab::{
    check_lemma3, check_property, sample_properties, FiniteObservationStructure, PropertyChecks, SuiteConfig,
    SuiteReport, TheoryItem,
};
use rayon::prelude::*;

/// Same report as [`partial_rv_core::obslab::run_suite`].
pub fn run_suite(s: &FiniteObservationStructure, cfg: &SuiteConfig) -> SuiteReport {
    let directed = s.is_directed();
    let properties = sample_properties(s, cfg);
    let checks: Vec<PropertyChecks> =
        properties.par_iter().map(|p| check_property(s, p, directed, cfg)).collect();
    let mut report = SuiteReport::new(directed, s.num_behaviours() <= cfg.exhaustive_limit);
    for c in checks {
        report.absorb(c);
    }
    report.set(TheoryItem::Lemma3, check_lemma3(s, &properties, cfg));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use partial_rv_core::obslab::{branching_traces, linear_words};

    #[test]
    fn agrees_with_the_sequential_suite() {
        let cfg = SuiteConfig::default();
        for s in [linear_words(&["a", "b"], 2), branching_traces().structure] {
            let a = run_suite(&s, &cfg);
            let b = partial_rv_core::obslab::run_suite(&s, &cfg);
            assert_eq!(a.to_string(), b.to_string());
        }
    }
}
