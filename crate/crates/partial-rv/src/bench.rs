//! Synthesis and verification timings on random formulas and traces.

use std::hint::black_box;
use std::io::{self, Write};
use std::time::{Duration, Instant};

use partial_rv_core::gen::{random_formula, random_trace, rng};
use partial_rv_core::monitor::{GeneralisedMonitor, SynthesisOptions};
use partial_rv_core::{Event, InconsistentVerdicts, Interpretation};
use rand::Rng as _;
use rayon::prelude::*;

use crate::crosscheck::ltnu_pair;
use crate::shared::{SharedEngine, SharedMonitor};

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRecord {
    pub id: usize,
    pub size: usize,
    pub trace_len: usize,
    pub synth_ms: f64,
    pub total_ms: f64,
    pub per_event_ms: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Backend {
    /// Product of subset-construction monitors.
    Dfa,
    /// Pair of ν-calculus terms encoded from the automata.
    Ltnu,
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub formulas: usize,
    pub max_size: usize,
    pub lengths: Vec<usize>,
    pub interp: Interpretation,
    pub seed: u64,
    pub backend: Backend,
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

/// Wall time of stepping a fresh cursor of `m` through `trace`.
pub fn time_dfa(m: &GeneralisedMonitor, trace: &[usize]) -> Duration {
    let start = Instant::now();
    let mut c = m.cursor();
    for &e in trace {
        black_box(c.step_index(e));
    }
    start.elapsed()
}

/// Wall time of stepping a copy of `m` through `trace`.
pub fn time_ltnu(m: &SharedMonitor, trace: &[usize]) -> Result<Duration, BenchError> {
    let mut m = m.clone();
    let start = Instant::now();
    for &e in trace {
        black_box(m.step_index(e)?);
    }
    Ok(start.elapsed())
}

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error(transparent)]
    Synthesis(#[from] InconsistentVerdicts),
    #[error(transparent)]
    Ltnu(#[from] partial_rv_core::ltnu::LtnuError),
}

enum Built {
    Dfa(GeneralisedMonitor),
    Ltnu(SharedMonitor),
}

fn indices(interp: &Interpretation, trace: &[Event]) -> Vec<usize> {
    trace.iter().map(|&e| interp.event_index(e).expect("generated events are in the alphabet")).collect()
}

/// One record per formula and trace length. Formulas are benchmarked in
/// parallel; formula `id` and its traces depend only on `seed` and `id`.
pub fn run(cfg: &BenchConfig) -> Result<Vec<BenchRecord>, BenchError> {
    let per_formula: Vec<Result<Vec<BenchRecord>, BenchError>> = (0..cfg.formulas)
        .into_par_iter()
        .map(|id| {
            let mut r = rng(cfg.seed.wrapping_add(id as u64));
            let size = r.random_range(1..=cfg.max_size);
            let phi = random_formula(&mut r, &cfg.interp, size);
            let start = Instant::now();
            let built = match cfg.backend {
                Backend::Dfa => Built::Dfa(GeneralisedMonitor::synthesize(
                    &phi,
                    &cfg.interp,
                    SynthesisOptions::default(),
                )?),
                Backend::Ltnu => {
                    let engine = SharedEngine::new(&cfg.interp);
                    let (ts, tc) = ltnu_pair(&phi, &cfg.interp);
                    let (ts, tc) = (engine.intern(&ts), engine.intern(&tc));
                    Built::Ltnu(engine.generalised(ts, tc)?)
                }
            };
            let synth_ms = ms(start.elapsed());
            cfg.lengths
                .iter()
                .map(|&len| {
                    let trace = indices(&cfg.interp, &random_trace(&mut r, &cfg.interp, len));
                    let total = match &built {
                        Built::Dfa(m) => time_dfa(m, &trace),
                        Built::Ltnu(m) => time_ltnu(m, &trace)?,
                    };
                    let total_ms = ms(total);
                    Ok(BenchRecord {
                        id,
                        size: phi.size(),
                        trace_len: len,
                        synth_ms,
                        total_ms,
                        per_event_ms: if len == 0 { 0.0 } else { total_ms / len as f64 },
                    })
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for records in per_formula {
        out.extend(records?);
    }
    Ok(out)
}

pub fn write_csv<W: Write>(records: &[BenchRecord], mut w: W) -> io::Result<()> {
    writeln!(w, "id,size,trace_len,synth_ms,total_ms,per_event_ms")?;
    for r in records {
        writeln!(
            w,
            "{},{},{},{:.6},{:.6},{:.9}",
            r.id, r.size, r.trace_len, r.synth_ms, r.total_ms, r.per_event_ms
        )?;
    }
    Ok(())
}

/// Least-squares line through the points: `(slope, intercept, r²)`.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    (slope, intercept, r2)
}
