use partial_rv_core::gen::{random_structure, rng};
use partial_rv_core::lasso::all_words_up_to;
use partial_rv_core::monitor::{GeneralisedMonitor, SynthesisOptions};
use partial_rv_core::obslab::{
    example5_lassos, hyper_sets, linear_words, run_suite, Outcome, SuiteConfig, TheoryItem,
};
use partial_rv_core::{Event, Verdict6};
use rand::Rng;

#[test]
fn lasso_model_agrees_with_the_synthesised_monitor() {
    let (model, phi) = example5_lassos();
    let p = model.property(&phi);
    let m = GeneralisedMonitor::synthesize(&phi, &model.interp, SynthesisOptions::default()).unwrap();
    let events: Vec<Event> = model.interp.events().collect();
    let mut giveups = 0;
    // Observations stop at length 2, so only shorter prefixes have the
    // refinements the ω-word monitor sees.
    for u in all_words_up_to(&events, 1) {
        let o = model.observation(&u).expect("every short prefix is an observation");
        let lab = model.structure.generalized_abstract_monitor(&p, o);
        let mut c = m.cursor();
        for &e in &u {
            c.step(e).unwrap();
        }
        assert_eq!(lab, c.verdict(), "{u:?}");
        giveups += (lab == Verdict6::Giveup) as usize;
    }
    assert!(giveups > 0);
}

#[test]
fn suite_passes_on_the_models() {
    let cfg = SuiteConfig::default();
    for s in [linear_words(&["a", "b"], 3), hyper_sets(), example5_lassos().0.structure] {
        let report = run_suite(&s, &cfg);
        assert!(report.passed(), "{report}");
    }
}

#[test]
fn suite_passes_on_random_structures() {
    let cfg = SuiteConfig::default();
    let mut r = rng(31);
    for k in 0..40 {
        let (b, o) = (r.random_range(1..=8), r.random_range(1..=10));
        let s = random_structure(&mut r, b, o, k % 2 == 0);
        assert!(s.is_valid());
        let report = run_suite(&s, &cfg);
        assert!(report.passed() && report.exhaustive, "{s}\n{report}");
        if !s.is_directed() {
            assert!(matches!(report.outcome(TheoryItem::Theorem2), Outcome::Skipped { .. }));
        }
    }
}

#[test]
fn sampled_suite_is_reproducible() {
    let s = hyper_sets();
    let cfg = SuiteConfig { samples: 200, seed: 5, ..SuiteConfig::default() };
    assert_eq!(run_suite(&s, &cfg).to_string(), run_suite(&s, &cfg).to_string());
}
