//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the lines are always printed; exits nonzero when any criterion fails.

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use partial_rv::bench::{linear_fit, time_dfa, time_ltnu};
use partial_rv::crosscheck::compare;
use partial_rv::lab;
use partial_rv::shared::SharedEngine;
use partial_rv_core::automata::Nba;
use partial_rv_core::encoder::encode;
use partial_rv_core::gen::{random_formula, random_nba, random_structure, random_term, rng};
use partial_rv_core::lasso::{all_lassos, all_words_up_to};
use partial_rv_core::ltl::{eval_lasso, parse};
use partial_rv_core::ltl2nba::translate;
use partial_rv_core::ltnu::{parse_term, satisfies_lasso, Engine};
use partial_rv_core::monitor::{GeneralisedMonitor, SynthesisOptions};
use partial_rv_core::obslab::{branching_sets, branching_traces, example4_witness, SuiteConfig};
use partial_rv_core::{combine, Event, Formula, Interpretation, Verdict3, Verdict6};
use rand::Rng;

type Check = Result<String, String>;

fn criterion(n: usize, name: &str, limit: Option<Duration>, f: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let result = f();
    let took = start.elapsed();
    let (ok, detail) = match result {
        Ok(d) => match limit {
            Some(l) if took > l => (false, format!("{d}; took {took:.2?}, limit {l:.0?}")),
            Some(l) => (true, format!("{d}; {took:.2?} (limit {l:.0?})")),
            None => (true, format!("{d}; {took:.2?}")),
        },
        Err(d) => (false, d),
    };
    println!("{} {n}. {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    ok
}

fn raw_abcd() -> Interpretation {
    Interpretation::raw(&["a", "b", "c", "d"]).unwrap()
}

const EXAMPLE5: &str = "(a & F b) | (c & G F d)";

fn ev(i: &Interpretation, names: &[&str]) -> Vec<Event> {
    names.iter().map(|n| i.parse_event(n).unwrap()).collect()
}

fn example5_table() -> Check {
    let i = raw_abcd();
    let m = GeneralisedMonitor::synthesize(&parse(EXAMPLE5, &i).unwrap(), &i, SynthesisOptions::default())
        .map_err(|e| e.to_string())?;
    let rows: [(&[&str], Verdict6); 4] = [
        (&["c"], Verdict6::Giveup),
        (&["a"], Verdict6::UnknownYes),
        (&["b"], Verdict6::No),
        (&["a", "b"], Verdict6::Yes),
    ];
    for (trace, want) in rows {
        let got = *m.run(&ev(&i, trace)).unwrap().last().unwrap();
        if got != want {
            return Err(format!("{trace:?}: expected {want}, got {got}"));
        }
    }
    // Padding after the decisive event does not change the row.
    for pad in all_words_up_to(&ev(&i, &["a", "b", "c", "d"]), 2) {
        for (head, want) in [("c", Verdict6::Giveup), ("b", Verdict6::No)] {
            let mut t = ev(&i, &[head]);
            t.extend(&pad);
            let got = *m.run(&t).unwrap().last().unwrap();
            if got != want {
                return Err(format!("{head} then {pad:?}: expected {want}, got {got}"));
            }
        }
    }
    Ok("4 rows match".into())
}

fn example7_pair() -> Check {
    let i = raw_abcd();
    let engine = SharedEngine::new(&i);
    let ts = engine.intern(&parse_term("a | c", &i).unwrap());
    let tc = engine.intern(&parse_term("~a | (nu X. ~b & o X)", &i).unwrap());
    if !engine.covers(ts, tc) {
        return Err("t_S | t_coS is not provable".into());
    }
    let ltnu = engine.generalised(ts, tc).map_err(|e| e.to_string())?;
    let dfa = GeneralisedMonitor::synthesize(&parse(EXAMPLE5, &i).unwrap(), &i, SynthesisOptions::default())
        .map_err(|e| e.to_string())?;
    let traces = all_words_up_to(&ev(&i, &["a", "b", "c", "d"]), 5);
    for t in &traces {
        let a = dfa.run(t).unwrap();
        let b = ltnu.clone().run(t).map_err(|e| e.to_string())?;
        if a != b {
            return Err(format!("{t:?}: automaton {a:?}, terms {b:?}"));
        }
    }
    Ok(format!("provable; {} traces agree", traces.len()))
}

/// States that can reach an accepting state lying on a cycle.
fn live_states(a: &Nba) -> Vec<bool> {
    let n = a.num_states();
    let reach_from = |q: usize, strict: bool| {
        let mut seen = vec![false; n];
        let mut stack: Vec<usize> = Vec::new();
        if strict {
            for e in 0..a.num_events() {
                stack.extend(a.successors(q, e));
            }
        } else {
            stack.push(q);
        }
        while let Some(p) = stack.pop() {
            if !seen[p] {
                seen[p] = true;
                for e in 0..a.num_events() {
                    stack.extend(a.successors(p, e));
                }
            }
        }
        seen
    };
    let good: Vec<bool> = (0..n).map(|r| a.is_accepting(r) && reach_from(r, true)[r]).collect();
    (0..n).map(|q| reach_from(q, false).iter().zip(&good).any(|(&s, &g)| s && g)).collect()
}

/// Verdicts of the two completions of `⟦A⟧` computed by emptiness checks
/// on state sets, with `A'` accepting the complement.
struct CompletionOracle {
    a: Nba,
    live: Vec<bool>,
    all_live: HashMap<Vec<usize>, bool>,
}

impl CompletionOracle {
    fn new(a: Nba) -> Self {
        let live = live_states(&a);
        CompletionOracle { a, live, all_live: HashMap::new() }
    }

    fn step(&self, s: &[usize], e: usize) -> Vec<usize> {
        let mut out: Vec<usize> = s.iter().flat_map(|&q| self.a.successors(q, e).iter().copied()).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    fn is_live(&self, s: &[usize]) -> bool {
        s.iter().any(|&q| self.live[q])
    }

    /// Every finite continuation keeps the set live.
    fn always_live(&mut self, s: &[usize]) -> bool {
        if let Some(&v) = self.all_live.get(s) {
            return v;
        }
        let mut seen = vec![s.to_vec()];
        let mut i = 0;
        let mut ok = true;
        while i < seen.len() && ok {
            let cur = seen[i].clone();
            i += 1;
            if !self.is_live(&cur) {
                ok = false;
                break;
            }
            for e in 0..self.a.num_events() {
                let t = self.step(&cur, e);
                if !seen.contains(&t) {
                    seen.push(t);
                }
            }
        }
        self.all_live.insert(s.to_vec(), ok);
        ok
    }

    /// `M_Γ` for the language of this automaton.
    fn safety_verdict(&mut self, s: &[usize]) -> Verdict3 {
        if !self.is_live(s) {
            Verdict3::No
        } else if self.always_live(s) {
            Verdict3::Yes
        } else {
            Verdict3::Unknown
        }
    }
}

fn oracle_equivalence(formulas: &[(Formula, Interpretation)]) -> Check {
    let mut prefixes = 0usize;
    for (phi, i) in formulas {
        let m =
            GeneralisedMonitor::synthesize(phi, i, SynthesisOptions::default()).map_err(|e| e.to_string())?;
        let mut pos = CompletionOracle::new(translate(phi, i));
        let mut neg = CompletionOracle::new(translate(&phi.dual(), i));
        // Depth-first over all traces up to length 6.
        let mut stack =
            vec![(Vec::<usize>::new(), m.initial(), pos.a.initial().to_vec(), neg.a.initial().to_vec())];
        while let Some((trace, q, sp, sn)) = stack.pop() {
            prefixes += 1;
            let safety = pos.safety_verdict(&sp);
            // Δ is the complement of the safety completion of the complement.
            let cosafety = neg.safety_verdict(&sn).invert();
            let want = combine(safety, cosafety).map_err(|e| format!("{}: oracle {e}", phi.to_text(i)))?;
            if m.label(q) != want {
                return Err(format!(
                    "{} on {trace:?}: monitor {}, oracle {want}",
                    phi.to_text(i),
                    m.label(q)
                ));
            }
            if trace.len() < 6 {
                for e in 0..i.num_events() {
                    let mut t = trace.clone();
                    t.push(e);
                    let (np, nn) = (pos.step(&sp, e), neg.step(&sn, e));
                    stack.push((t, m.next(q, e), np, nn));
                }
            }
        }
    }
    Ok(format!("{} formulas, {prefixes} traces, 0 mismatches", formulas.len()))
}

fn translation(formulas: &[(Formula, Interpretation)]) -> Check {
    let mut checked = 0usize;
    for (phi, i) in formulas {
        let a = translate(phi, i);
        for w in all_lassos(i, 5) {
            checked += 1;
            if a.accepts_lasso(&w, i) != eval_lasso(phi, &w) {
                return Err(format!("{} on {w:?}", phi.to_text(i)));
            }
        }
    }
    Ok(format!("{} formulas, {checked} lasso checks, 0 mismatches", formulas.len()))
}

fn ltnu_semantics() -> Check {
    let i = Interpretation::valuation(&["a", "b"]).unwrap();
    let lassos = all_lassos(&i, 4);
    let mut r = rng(5);
    for k in 0..200 {
        let size = r.random_range(1..=8);
        let t = random_term(&mut r, &i, size);
        let mut e = Engine::new(&i);
        let id = e.intern(&t);
        for w in &lassos {
            if e.run_exists(id, w) != satisfies_lasso(&t, w) {
                return Err(format!("term {k} `{}` on {w:?}", t.to_text(&i)));
            }
        }
    }
    Ok(format!("200 terms x {} lassos, 0 mismatches", lassos.len()))
}

fn encoding(formulas: &[(Formula, Interpretation)]) -> Check {
    let mut r = rng(6);
    let interps =
        [Interpretation::raw(&["a", "b"]).unwrap(), Interpretation::valuation(&["a", "b"]).unwrap()];
    for k in 0..100 {
        let i = &interps[k % 2];
        let states = r.random_range(1..=5);
        let a = random_nba(&mut r, states, i.num_events());
        let t = encode(&a, i);
        for w in all_lassos(i, 4) {
            if satisfies_lasso(&t, &w) != a.accepts_lasso(&w, i) {
                return Err(format!("automaton {k} on {w:?}"));
            }
        }
    }
    let mut checked = 0;
    for (phi, i) in formulas.iter().take(50) {
        let events: Vec<Event> = i.events().collect();
        compare(phi, i, &all_words_up_to(&events, 5)).map_err(|e| format!("{}: {e}", phi.to_text(i)))?;
        checked += 1;
    }
    Ok(format!("100 automata agree; {checked} formulas agree across pipelines"))
}

fn obslab_suite() -> Check {
    let cfg = SuiteConfig::default();
    let mut r = rng(7);
    let mut structures = 0;
    for k in 0..60 {
        let b = r.random_range(1..=8);
        let o = r.random_range(1..=10);
        let directed = k % 2 == 0;
        let s = random_structure(&mut r, b, o, directed);
        let report = lab::run_suite(&s, &cfg);
        if !report.passed() || !report.exhaustive {
            return Err(format!("structure {k}:\n{s}\n{report}"));
        }
        structures += 1;
    }
    let traces = branching_traces();
    let p = example4_witness(&traces);
    if !(traces.structure.is_safety(&p) && !traces.structure.is_monitorable(&p)) {
        return Err("witness is not a non-monitorable safety property over path observations".into());
    }
    let sets = branching_sets();
    let q = example4_witness(&sets);
    if !(sets.structure.is_directed() && sets.structure.is_safety(&q) && sets.structure.is_monitorable(&q)) {
        return Err("witness is not monitorable over subtree observations".into());
    }
    for (name, s) in [("path observations", &traces.structure), ("subtree observations", &sets.structure)] {
        let report = lab::run_suite(s, &cfg);
        if !report.passed() {
            return Err(format!("{name}:\n{report}"));
        }
    }
    Ok(format!("{structures} random structures, all properties; witness and repair confirmed"))
}

/// Median wall time of `runs` repetitions.
fn median(runs: usize, mut f: impl FnMut() -> Duration) -> f64 {
    let mut ts: Vec<f64> = (0..runs).map(|_| f().as_secs_f64()).collect();
    ts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ts[runs / 2]
}

fn linear_trend(label: &str, mut time: impl FnMut(&[usize]) -> f64, events: usize) -> Result<String, String> {
    let lengths = [1_000usize, 10_000, 100_000];
    let mut r = rng(8);
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for &len in &lengths {
        let trace: Vec<usize> = (0..len).map(|_| r.random_range(0..events)).collect();
        xs.push(len as f64);
        ys.push(time(&trace));
    }
    let (_, _, r2) = linear_fit(&xs, &ys);
    let ratio = (ys[2] / xs[2]) / (ys[1] / xs[1]);
    let line = format!("{label} R² {r2:.4}, per-event ratio {ratio:.2}");
    if r2 >= 0.98 && (0.5..=2.0).contains(&ratio) {
        Ok(line)
    } else {
        Err(line)
    }
}

fn performance() -> Check {
    let i = Interpretation::raw(&["a", "b", "c"]).unwrap();
    let phi = parse("G (a | b)", &i).unwrap();
    let dfa =
        GeneralisedMonitor::synthesize(&phi, &i, SynthesisOptions::default()).map_err(|e| e.to_string())?;
    // Only `a` and `b` (indices 0 and 1), so neither monitor halts.
    let d = linear_trend("automaton", |t| median(7, || time_dfa(&dfa, t)), 2)?;
    let engine = SharedEngine::new(&i);
    let t = engine.intern(&parse_term("nu X. (a | b) & o X", &i).unwrap());
    let c = engine.intern(&parse_term("nu X. o X", &i).unwrap());
    let ltnu = engine.generalised(t, c).map_err(|e| e.to_string())?;
    let l = linear_trend("terms", |t| median(7, || time_ltnu(&ltnu, t).unwrap()), 2)?;

    let mut growth = Vec::new();
    for size in [2, 4, 6, 8, 10] {
        let mut r = rng(9);
        let start = Instant::now();
        for _ in 0..20 {
            let f = random_formula(&mut r, &i, size);
            GeneralisedMonitor::synthesize(&f, &i, SynthesisOptions::default()).map_err(|e| e.to_string())?;
        }
        growth.push(format!("{size}:{:.3}ms", start.elapsed().as_secs_f64() * 1e3 / 20.0));
    }
    Ok(format!("{d}; {l}; synthesis by size {}", growth.join(" ")))
}

fn formula_set() -> Vec<(Formula, Interpretation)> {
    let interps =
        [Interpretation::raw(&["a", "b", "c"]).unwrap(), Interpretation::valuation(&["a", "b"]).unwrap()];
    let mut r = rng(4);
    (0..200)
        .map(|k| {
            let i = &interps[k % 2];
            let size = r.random_range(1..=6);
            (random_formula(&mut r, i, size), i.clone())
        })
        .collect()
}

fn main() -> ExitCode {
    let formulas = formula_set();
    let secs = Duration::from_secs;
    let results = [
        criterion(1, "Example 5 golden table", Some(secs(1)), example5_table),
        criterion(2, "Example 7 golden pair", Some(secs(10)), example7_pair),
        criterion(3, "generalised monitor equals abstract monitor", Some(secs(300)), || {
            oracle_equivalence(&formulas)
        }),
        criterion(4, "translation against lasso evaluation", None, || translation(&formulas)),
        criterion(5, "term semantics against run existence", None, ltnu_semantics),
        criterion(6, "automaton encoding and cross-pipeline agreement", None, || encoding(&formulas)),
        criterion(7, "observation-structure suite", Some(secs(600)), obslab_suite),
        criterion(8, "linear verification time", None, performance),
    ];
    if results.iter().all(|&ok| ok) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
