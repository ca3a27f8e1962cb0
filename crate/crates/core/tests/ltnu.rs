use partial_rv_core::gen::{random_term, rng};
use partial_rv_core::lasso::{all_lassos, all_words_up_to};
use partial_rv_core::ltnu::{parse_term, refuted_prefix, satisfies_lasso, Engine, LtnuMonitor, Term};
use partial_rv_core::{Event, Interpretation, Verdict3};
use rand::Rng;

fn terms(seed: u64, count: usize, max_size: usize, i: &Interpretation) -> Vec<Term> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let size = r.random_range(1..=max_size);
            random_term(&mut r, i, size)
        })
        .collect()
}

fn v2() -> Interpretation {
    Interpretation::valuation(&["a", "b"]).unwrap()
}

#[test]
fn refuted_lassos_have_a_refuted_prefix() {
    let i = v2();
    for t in terms(21, 150, 8, &i) {
        let mut e = Engine::new(&i);
        let id = e.intern(&t);
        for w in all_lassos(&i, 4) {
            if satisfies_lasso(&t, &w) {
                continue;
            }
            let letters: Vec<Event> = (0..64).map(|k| w.letter(k)).collect();
            let found = (0..=letters.len()).any(|n| refuted_prefix(&mut e, id, &letters[..n]).unwrap());
            assert!(found, "`{}` on {w:?}", t.to_text(&i));
        }
    }
}

#[test]
fn conjunction_runs_give_runs_of_both_sides() {
    let i = v2();
    let ts = terms(22, 120, 5, &i);
    for pair in ts.chunks(2) {
        let both = Term::and(pair[0].clone(), pair[1].clone());
        let mut e = Engine::new(&i);
        let (x, a, b) = (e.intern(&both), e.intern(&pair[0]), e.intern(&pair[1]));
        for w in all_lassos(&i, 4) {
            if e.run_exists(x, &w) {
                assert!(e.run_exists(a, &w) && e.run_exists(b, &w), "{}", both.to_text(&i));
            }
        }
    }
}

/// Residual sets reachable from `{t}`.
fn residual_sets(e: &mut Engine, t: partial_rv_core::ltnu::TermId) -> usize {
    let start = e.set(&[t]);
    let mut seen = vec![start];
    let mut k = 0;
    while k < seen.len() {
        for ev in 0..e.interpretation().num_events() {
            let s = e.step_set(seen[k], ev);
            if !seen.contains(&s) {
                seen.push(s);
            }
        }
        k += 1;
    }
    seen.len()
}

#[test]
fn provability_matches_lasso_semantics() {
    let i = Interpretation::raw(&["a", "b"]).unwrap();
    let mut r = rng(23);
    let mut tested = 0;
    let mut valid = 0;
    while tested < 150 {
        let size = r.random_range(1..=9);
        let t = random_term(&mut r, &i, size);
        let mut e = Engine::new(&i);
        let id = e.intern(&t);
        let bound = residual_sets(&mut e, id) + 1;
        if bound > 7 {
            continue;
        }
        tested += 1;
        let semantic = all_lassos(&i, bound).iter().all(|w| satisfies_lasso(&t, w));
        assert_eq!(e.is_valid(id), semantic, "`{}`", t.to_text(&i));
        valid += semantic as usize;
    }
    assert!(valid > 0);
}

#[test]
fn rank_ignores_substitution() {
    let i = v2();
    let mut r = rng(24);
    let mut checked = 0;
    for t in terms(25, 400, 10, &i) {
        if let Term::Nu(x, body) = &t {
            let size = r.random_range(1..=6);
            let s = random_term(&mut r, &i, size);
            assert_eq!(body.subst(x, &s).rank(), body.rank());
            assert_eq!(t.unfold().rank(), body.rank());
            checked += 1;
        }
    }
    assert!(checked > 10);
}

#[test]
fn monitor_verdicts_only_grow() {
    let i = v2();
    let events: Vec<Event> = i.events().collect();
    let words = all_words_up_to(&events, 4);
    for t in terms(26, 100, 8, &i) {
        let mut e = Engine::new(&i);
        let id = e.intern(&t);
        for u in &words {
            let mut m = LtnuMonitor::new(&mut e, id);
            let mut last = m.verdict();
            for &ev in u {
                let v = m.step(&mut e, ev).unwrap();
                assert!(last.leq(v), "`{}` on {u:?}", t.to_text(&i));
                last = v;
            }
        }
    }
}

#[test]
fn excluded_middle_is_always_yes() {
    let i = v2();
    let mut e = Engine::new(&i);
    let t = e.intern(&parse_term("nu X. (a | ~a) & o X", &i).unwrap());
    let events: Vec<Event> = i.events().collect();
    for u in all_words_up_to(&events, 3) {
        let mut m = LtnuMonitor::new(&mut e, t);
        for &ev in &u {
            m.step(&mut e, ev).unwrap();
        }
        assert_eq!(m.verdict(), Verdict3::Yes);
    }
}
