use partial_rv::crosscheck::compare;
use partial_rv::formats::{read_trace, write_trace};
use partial_rv_core::gen::{random_formula, random_trace, rng};
use partial_rv_core::monitor::{GeneralisedMonitor, SynthesisOptions};
use partial_rv_core::Interpretation;
use rand::Rng;

#[test]
fn pipelines_agree_on_long_random_traces() {
    let interps =
        [Interpretation::raw(&["a", "b", "c"]).unwrap(), Interpretation::valuation(&["a", "b"]).unwrap()];
    let mut r = rng(51);
    for k in 0..40 {
        let i = &interps[k % 2];
        let size = r.random_range(1..=7);
        let phi = random_formula(&mut r, i, size);
        let traces: Vec<_> = (0..20).map(|_| random_trace(&mut r, i, 30)).collect();
        compare(&phi, i, &traces).unwrap_or_else(|e| panic!("{}: {e}", phi.to_text(i)));
    }
}

#[test]
fn verdict_streams_are_reproducible() {
    let i = Interpretation::valuation(&["a", "b"]).unwrap();
    let stream = |seed| {
        let mut r = rng(seed);
        let phi = random_formula(&mut r, &i, 6);
        let trace = random_trace(&mut r, &i, 50);
        let text = write_trace(&trace, &i);
        assert_eq!(read_trace(&text, &i).unwrap(), trace);
        GeneralisedMonitor::synthesize(&phi, &i, SynthesisOptions::default()).unwrap().run(&trace).unwrap()
    };
    assert_eq!(stream(3), stream(3));
}
