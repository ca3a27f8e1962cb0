use partial_rv_core::automata::Nba;
use partial_rv_core::gen::{random_formula, rng};
use partial_rv_core::lasso::all_lassos;
use partial_rv_core::ltl2nba::translate;
use partial_rv_core::monitor::{completion_monitor, GeneralisedMonitor, SynthesisOptions};
use partial_rv_core::{Formula, Interpretation};
use rand::Rng;

fn formulas(seed: u64, count: usize, max_size: usize) -> Vec<(Formula, Interpretation)> {
    let interps =
        [Interpretation::raw(&["a", "b", "c"]).unwrap(), Interpretation::valuation(&["a", "b"]).unwrap()];
    let mut r = rng(seed);
    (0..count)
        .map(|k| {
            let i = &interps[k % 2];
            let size = r.random_range(1..=max_size);
            (random_formula(&mut r, i, size), i.clone())
        })
        .collect()
}

/// Whether some word is accepted from one of `states`.
fn nonempty_from(a: &Nba, states: &[usize]) -> bool {
    let live = a.nonempty_states();
    states.iter().any(|q| live.contains(q))
}

/// States reachable from `start` by reading any finite word, as sets.
fn reachable_sets(a: &Nba, start: Vec<usize>) -> Vec<Vec<usize>> {
    let mut seen = vec![start];
    let mut i = 0;
    while i < seen.len() {
        for e in 0..a.num_events() {
            let t = a.post(&seen[i], e);
            if !seen.contains(&t) {
                seen.push(t);
            }
        }
        i += 1;
    }
    seen
}

#[test]
fn completion_monitors_are_impartial() {
    for (phi, i) in formulas(11, 60, 6) {
        let m = completion_monitor(&phi, &i, false);
        let d = m.dfa();
        for q in 0..d.num_states() {
            for e in 0..i.num_events() {
                assert!(m.label(q).leq(m.label(d.next(q, e))), "{}", phi.to_text(&i));
            }
        }
    }
}

#[test]
fn generalised_labels_only_grow_and_final_verdicts_are_reachable() {
    for (phi, i) in formulas(12, 80, 6) {
        for minimize in [false, true] {
            let m = GeneralisedMonitor::synthesize(&phi, &i, SynthesisOptions { minimize }).unwrap();
            for q in 0..m.num_states() {
                for e in 0..i.num_events() {
                    assert!(m.label(q).leq(m.label(m.next(q, e))), "{}", phi.to_text(&i));
                }
            }
            assert!(m.always_reaches_final(), "{}", phi.to_text(&i));
        }
    }
}

/// Monitorable: from every prefix some extension makes the abstract monitor
/// conclusive, i.e. leaves no word of the property or none of its
/// complement.
#[test]
fn monitorability_matches_a_direct_search() {
    for (phi, i) in formulas(13, 80, 5) {
        let pos = translate(&phi, &i);
        let neg = translate(&phi.dual(), &i);
        let product = reachable_pairs(&pos, &neg);
        let conclusive =
            |(s, t): &(Vec<usize>, Vec<usize>)| !nonempty_from(&pos, s) || !nonempty_from(&neg, t);
        let direct =
            product.iter().all(|p| reachable_pairs_from(&pos, &neg, p.clone()).iter().any(conclusive));
        let m = GeneralisedMonitor::synthesize(&phi, &i, SynthesisOptions::default()).unwrap();
        assert_eq!(m.is_monitorable(), direct, "{}", phi.to_text(&i));
    }
}

fn reachable_pairs(a: &Nba, b: &Nba) -> Vec<(Vec<usize>, Vec<usize>)> {
    reachable_pairs_from(a, b, (a.initial().to_vec(), b.initial().to_vec()))
}

fn reachable_pairs_from(a: &Nba, b: &Nba, start: (Vec<usize>, Vec<usize>)) -> Vec<(Vec<usize>, Vec<usize>)> {
    let norm = |mut v: Vec<usize>| {
        v.sort_unstable();
        v.dedup();
        v
    };
    let mut seen = vec![(norm(start.0), norm(start.1))];
    let mut i = 0;
    while i < seen.len() {
        for e in 0..a.num_events() {
            let t = (norm(a.post(&seen[i].0, e)), norm(b.post(&seen[i].1, e)));
            if !seen.contains(&t) {
                seen.push(t);
            }
        }
        i += 1;
    }
    seen
}

#[test]
fn dual_translation_accepts_the_complement() {
    for (phi, i) in formulas(14, 60, 6) {
        let a = translate(&phi, &i);
        let b = translate(&phi.dual(), &i);
        for w in all_lassos(&i, 4) {
            assert_ne!(a.accepts_lasso(&w, &i), b.accepts_lasso(&w, &i), "{} on {w:?}", phi.to_text(&i));
        }
    }
}

#[test]
fn safety_closure_is_idempotent_and_extensive() {
    for (phi, i) in formulas(15, 60, 6) {
        let a = translate(&phi, &i);
        let once = a.safety_close();
        let twice = once.safety_close();
        assert_eq!(once, twice, "{}", phi.to_text(&i));
        for w in all_lassos(&i, 4) {
            if a.accepts_lasso(&w, &i) {
                assert!(once.accepts_lasso(&w, &i));
            }
        }
        // Every state set reached in the closure is either empty or live.
        for s in reachable_sets(&once, once.initial().to_vec()) {
            assert!(s.is_empty() || nonempty_from(&once, &s));
        }
    }
}
