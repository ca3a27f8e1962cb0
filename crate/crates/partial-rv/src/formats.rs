//! Text file formats.
//!
//! Lines starting with `#` and blank lines are ignored everywhere except
//! inside terms and formulas, which are read as a whole.

use std::fmt::Write as _;

use partial_rv_core::automata::Nba;
use partial_rv_core::ltl::{self, Formula};
use partial_rv_core::ltnu::{parse_term, Term};
use partial_rv_core::obslab::FiniteObservationStructure;
use partial_rv_core::{Event, Interpretation, LassoWord, Mode};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("{0}")]
    Other(String),
}

fn at(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Line { line, message: message.into() }
}

/// Non-blank, non-comment lines with their 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn strip_comments(text: &str) -> String {
    text.lines().filter(|l| !l.trim_start().starts_with('#')).collect::<Vec<_>>().join("\n")
}

/// One event per line.
pub fn read_trace(text: &str, interp: &Interpretation) -> Result<Vec<Event>, FormatError> {
    content_lines(text).map(|(n, l)| interp.parse_event(l).map_err(|e| at(n, e.to_string()))).collect()
}

pub fn write_trace(trace: &[Event], interp: &Interpretation) -> String {
    trace.iter().map(|&e| interp.event_name(e) + "\n").collect()
}

/// Prefix lines, a `---` line, loop lines.
pub fn read_lasso(text: &str, interp: &Interpretation) -> Result<LassoWord, FormatError> {
    let mut prefix = Vec::new();
    let mut cycle = Vec::new();
    let mut seen_sep = false;
    for (n, l) in content_lines(text) {
        if l == "---" {
            if seen_sep {
                return Err(at(n, "second `---` separator"));
            }
            seen_sep = true;
            continue;
        }
        let e = interp.parse_event(l).map_err(|e| at(n, e.to_string()))?;
        if seen_sep {
            cycle.push(e)
        } else {
            prefix.push(e)
        }
    }
    if !seen_sep {
        return Err(FormatError::Other("missing `---` separator".into()));
    }
    LassoWord::new(prefix, cycle).map_err(|e| FormatError::Other(e.to_string()))
}

pub fn read_formula(text: &str, interp: &Interpretation) -> Result<Formula, FormatError> {
    ltl::parse(strip_comments(text).trim(), interp).map_err(|e| FormatError::Other(e.to_string()))
}

pub fn read_term(text: &str, interp: &Interpretation) -> Result<Term, FormatError> {
    parse_term(strip_comments(text).trim(), interp).map_err(|e| FormatError::Other(e.to_string()))
}

/// Two terms separated by a `===` line.
pub fn read_pair(text: &str, interp: &Interpretation) -> Result<(Term, Term), FormatError> {
    let text = strip_comments(text);
    let parts: Vec<&str> = text.split('\n').collect();
    let sep = parts
        .iter()
        .position(|l| l.trim() == "===")
        .ok_or_else(|| FormatError::Other("missing `===` separator".into()))?;
    let first = parts[..sep].join("\n");
    let second = parts[sep + 1..].join("\n");
    Ok((read_term(&first, interp)?, read_term(&second, interp)?))
}

/// Lowercase identifiers of `text` in order of first appearance, minus
/// `keywords`: the propositions a formula or term file mentions.
pub fn scan_props(text: &str, keywords: &[&str]) -> Vec<String> {
    let text = strip_comments(text);
    let mut out: Vec<String> = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        if !(c.is_ascii_alphanumeric() || c == '_') {
            continue;
        }
        let mut end = i + c.len_utf8();
        while let Some(&(j, d)) = chars.peek() {
            if d.is_ascii_alphanumeric() || d == '_' {
                end = j + d.len_utf8();
                chars.next();
            } else {
                break;
            }
        }
        let word = &text[i..end];
        if c.is_ascii_lowercase() && !keywords.contains(&word) && !out.iter().any(|w| w == word) {
            out.push(word.to_string());
        }
    }
    out
}

pub const FORMULA_KEYWORDS: &[&str] = &["true", "false"];
pub const TERM_KEYWORDS: &[&str] = &["top", "bot", "nu", "o"];

/// The plain-text automaton format. `mode:` is optional and is `raw`
/// (the default) or `valuation`; events in the triples are written as in
/// trace files.
///
/// ```text
/// states: 2
/// alphabet: a b
/// initial: 0
/// final: 0 1
/// 0 a 1
/// 1 b 0
/// ```
pub fn read_automaton(text: &str) -> Result<(Nba, Interpretation), FormatError> {
    let mut states = None;
    let mut mode = Mode::RawSymbol;
    let mut alphabet: Option<(usize, Vec<String>)> = None;
    let mut initial = (0, Vec::new());
    let mut finals = (0, Vec::new());
    let mut triples = Vec::new();
    for (n, l) in content_lines(text) {
        let header = l.split_once(':').map(|(k, v)| (k.trim(), v.trim()));
        match header {
            Some(("states", v)) => {
                states = Some(v.parse::<usize>().map_err(|_| at(n, "bad state count"))?);
            }
            Some(("mode", v)) => {
                mode = match v {
                    "raw" => Mode::RawSymbol,
                    "valuation" => Mode::Valuation,
                    _ => return Err(at(n, format!("unknown mode `{v}`"))),
                };
            }
            Some(("alphabet", v)) => {
                alphabet = Some((n, v.split_whitespace().map(str::to_string).collect()));
            }
            Some(("initial", v)) => initial = (n, parse_states(n, v)?),
            Some(("final", v)) => finals = (n, parse_states(n, v)?),
            _ => {
                let parts: Vec<&str> = l.split_whitespace().collect();
                if parts.len() != 3 {
                    return Err(at(n, "expected `src event dst`"));
                }
                triples.push((n, parts[0].to_string(), parts[1].to_string(), parts[2].to_string()));
            }
        }
    }
    let states = states.ok_or_else(|| FormatError::Other("missing `states:` header".into()))?;
    let (n, props) = alphabet.ok_or_else(|| FormatError::Other("missing `alphabet:` header".into()))?;
    let interp = Interpretation::new(&props, mode).map_err(|e| at(n, e.to_string()))?;
    let mut a = Nba::new(states, interp.num_events());
    let check = |n: usize, q: usize| {
        if q < states {
            Ok(q)
        } else {
            Err(at(n, format!("state {q} out of range")))
        }
    };
    for q in initial.1 {
        a.set_initial(check(initial.0, q)?);
    }
    for q in finals.1 {
        a.set_accepting(check(finals.0, q)?, true);
    }
    for (n, src, ev, dst) in triples {
        let src = src.parse().map_err(|_| at(n, "bad source state"))?;
        let dst = dst.parse().map_err(|_| at(n, "bad target state"))?;
        let e = interp.parse_event(&ev).map_err(|e| at(n, e.to_string()))?;
        let e = interp.event_index(e).ok_or_else(|| at(n, "event outside the alphabet"))?;
        a.add_transition(check(n, src)?, e, check(n, dst)?);
    }
    Ok((a, interp))
}

fn parse_states(n: usize, v: &str) -> Result<Vec<usize>, FormatError> {
    v.split_whitespace().map(|s| s.parse().map_err(|_| at(n, format!("bad state `{s}`")))).collect()
}

pub fn write_automaton(a: &Nba, interp: &Interpretation) -> String {
    let mut out = String::new();
    let join = |qs: &mut dyn Iterator<Item = usize>| qs.map(|q| q.to_string()).collect::<Vec<_>>().join(" ");
    writeln!(out, "states: {}", a.num_states()).unwrap();
    if interp.mode() == Mode::Valuation {
        writeln!(out, "mode: valuation").unwrap();
    }
    writeln!(out, "alphabet: {}", interp.props().join(" ")).unwrap();
    writeln!(out, "initial: {}", join(&mut a.initial().iter().copied())).unwrap();
    writeln!(out, "final: {}", join(&mut (0..a.num_states()).filter(|&q| a.is_accepting(q)))).unwrap();
    for q in 0..a.num_states() {
        for e in 0..a.num_events() {
            for &t in a.successors(q, e) {
                writeln!(out, "{q} {} {t}", interp.event_name(interp.event(e))).unwrap();
            }
        }
    }
    out
}

/// `behaviours:` and `observations:` name lists, then `refine: o p` and
/// `approx: o a` lines. The relations are taken literally; use
/// [`FiniteObservationStructure::violations`] to check them.
pub fn read_structure(text: &str) -> Result<FiniteObservationStructure, FormatError> {
    let mut behaviours: Option<Vec<String>> = None;
    let mut observations: Option<Vec<String>> = None;
    let mut pairs = Vec::new();
    for (n, l) in content_lines(text) {
        let (key, value) = l.split_once(':').ok_or_else(|| at(n, "expected `key: value`"))?;
        let names: Vec<String> = value.split_whitespace().map(str::to_string).collect();
        match key.trim() {
            "behaviours" => behaviours = Some(names),
            "observations" => observations = Some(names),
            k @ ("refine" | "approx") => {
                if names.len() != 2 {
                    return Err(at(n, format!("`{k}:` takes two names")));
                }
                pairs.push((n, k == "refine", names));
            }
            k => return Err(at(n, format!("unknown key `{k}`"))),
        }
    }
    let behaviours = behaviours.ok_or_else(|| FormatError::Other("missing `behaviours:` line".into()))?;
    let observations =
        observations.ok_or_else(|| FormatError::Other("missing `observations:` line".into()))?;
    let mut s = FiniteObservationStructure::new(behaviours, observations);
    for (n, refine, names) in pairs {
        let o = s
            .observation_index(&names[0])
            .ok_or_else(|| at(n, format!("unknown observation `{}`", names[0])))?;
        if refine {
            let p = s
                .observation_index(&names[1])
                .ok_or_else(|| at(n, format!("unknown observation `{}`", names[1])))?;
            s.add_refine(o, p);
        } else {
            let a = s
                .behaviour_index(&names[1])
                .ok_or_else(|| at(n, format!("unknown behaviour `{}`", names[1])))?;
            s.add_approx(o, a);
        }
    }
    Ok(s)
}
