//! Graphviz export.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use partial_rv_core::automata::{Dfa, MonitorDfa, Nba};
use partial_rv_core::monitor::GeneralisedMonitor;
use partial_rv_core::{Interpretation, Verdict3, Verdict6};

fn color3(v: Verdict3) -> &'static str {
    match v {
        Verdict3::Yes => "palegreen",
        Verdict3::No => "lightcoral",
        Verdict3::Unknown => "lightgray",
    }
}

fn color6(v: Verdict6) -> &'static str {
    match v {
        Verdict6::Yes => "palegreen",
        Verdict6::No => "lightcoral",
        Verdict6::Unknown => "lightgray",
        Verdict6::UnknownYes => "honeydew",
        Verdict6::UnknownNo => "mistyrose",
        Verdict6::Giveup => "gold",
    }
}

/// Edges grouped by `(src, dst)` with their event labels.
fn edges(
    interp: &Interpretation,
    n: usize,
    succ: impl Fn(usize, usize) -> Vec<usize>,
) -> BTreeMap<(usize, usize), Vec<String>> {
    let mut out: BTreeMap<(usize, usize), Vec<String>> = BTreeMap::new();
    for q in 0..n {
        for e in 0..interp.num_events() {
            for t in succ(q, e) {
                out.entry((q, t)).or_default().push(interp.event_name(interp.event(e)));
            }
        }
    }
    out
}

fn write_graph(
    out: &mut String,
    nodes: impl Iterator<Item = (usize, String)>,
    initial: &[usize],
    edges: BTreeMap<(usize, usize), Vec<String>>,
) {
    out.push_str("digraph {\n  rankdir=LR;\n  node [style=filled, fillcolor=white];\n");
    for (q, attrs) in nodes {
        writeln!(out, "  {q} [{attrs}];").unwrap();
    }
    for &q in initial {
        writeln!(out, "  init{q} [shape=point];\n  init{q} -> {q};").unwrap();
    }
    for ((q, t), labels) in edges {
        writeln!(out, "  {q} -> {t} [label=\"{}\"];", labels.join(", ").replace('"', "\\\"")).unwrap();
    }
    out.push_str("}\n");
}

fn shape(accepting: bool) -> &'static str {
    if accepting {
        "doublecircle"
    } else {
        "circle"
    }
}

pub fn nba_to_dot(a: &Nba, interp: &Interpretation) -> String {
    let mut out = String::new();
    let nodes = (0..a.num_states()).map(|q| (q, format!("shape={}", shape(a.is_accepting(q)))));
    let edges = edges(interp, a.num_states(), |q, e| a.successors(q, e).to_vec());
    write_graph(&mut out, nodes, a.initial(), edges);
    out
}

pub fn dfa_to_dot(a: &Dfa, interp: &Interpretation) -> String {
    let mut out = String::new();
    let nodes = (0..a.num_states()).map(|q| (q, format!("shape={}", shape(a.is_accepting(q)))));
    let edges = edges(interp, a.num_states(), |q, e| vec![a.next(q, e)]);
    write_graph(&mut out, nodes, &[a.initial()], edges);
    out
}

pub fn monitor_to_dot(m: &MonitorDfa, interp: &Interpretation) -> String {
    let a = m.dfa();
    let mut out = String::new();
    let nodes = (0..a.num_states()).map(|q| {
        let v = m.label(q);
        (q, format!("shape={}, fillcolor={}, verdict=\"{v}\"", shape(a.is_accepting(q)), color3(v)))
    });
    let edges = edges(interp, a.num_states(), |q, e| vec![a.next(q, e)]);
    write_graph(&mut out, nodes, &[a.initial()], edges);
    out
}

/// The labelled product; final verdicts are drawn as double circles.
pub fn generalised_to_dot(m: &GeneralisedMonitor) -> String {
    let interp = m.interpretation();
    let mut out = String::new();
    let nodes = (0..m.num_states()).map(|q| {
        let v = m.label(q);
        let attrs = format!(
            "shape={}, fillcolor={}, verdict=\"{v}\", label=\"{q}\\n{v}\"",
            shape(v.is_final()),
            color6(v)
        );
        (q, attrs)
    });
    let edges = edges(interp, m.num_states(), |q, e| vec![m.next(q, e)]);
    write_graph(&mut out, nodes, &[m.initial()], edges);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use partial_rv_core::ltl::parse;
    use partial_rv_core::monitor::SynthesisOptions;

    #[test]
    fn generalised_monitor_graph() {
        let i = Interpretation::raw(&["a", "b"]).unwrap();
        let phi = parse("G a", &i).unwrap();
        let m = GeneralisedMonitor::synthesize(&phi, &i, SynthesisOptions::default()).unwrap();
        let dot = generalised_to_dot(&m);
        assert!(dot.starts_with("digraph {"));
        assert!(dot.contains("verdict=\"unknown_no\""));
        assert!(dot.contains("shape=doublecircle, fillcolor=lightcoral, verdict=\"no\""));
        assert!(dot.contains("init0 -> 0;"));
    }

    #[test]
    fn nba_graph_marks_accepting_states() {
        let i = Interpretation::raw(&["a"]).unwrap();
        let mut a = Nba::new(2, 1);
        a.set_initial(0);
        a.set_accepting(1, true);
        a.add_transition(0, 0, 1);
        a.add_transition(0, 0, 0);
        let dot = nba_to_dot(&a, &i);
        assert!(dot.contains("1 [shape=doublecircle];"));
        assert!(dot.contains("0 -> 1 [label=\"a\"];"));
    }
}
