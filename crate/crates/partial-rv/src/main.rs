use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::anyhow;
use clap::{Args, Parser, Subcommand, ValueEnum};
use partial_rv::bench::{self, Backend, BenchConfig};
use partial_rv::dot::generalised_to_dot;
use partial_rv::formats::{
    read_automaton, read_formula, read_pair, read_structure, read_trace, scan_props, write_automaton,
    write_trace, FORMULA_KEYWORDS, TERM_KEYWORDS,
};
use partial_rv::lab;
use partial_rv::shared::SharedEngine;
use partial_rv_core::encoder::{encode, enforce_property1};
use partial_rv_core::gen::{random_formula, random_nba, random_structure, random_term, random_trace, rng};
use partial_rv_core::monitor::{GeneralisedMonitor, SynthesisOptions};
use partial_rv_core::obslab::SuiteConfig;
use partial_rv_core::{Event, Interpretation, Mode, Verdict6};

/// Generalised runtime monitors for LTL and the linear-time ν-calculus.
#[derive(Parser)]
#[command(name = "partial-rv", version)]
struct Cli {
    /// Atomic propositions, comma separated. Inferred from the input when omitted.
    #[arg(long, global = true, value_delimiter = ',')]
    props: Option<Vec<String>>,
    /// How events are read: proposition names or sets of propositions.
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Raw)]
    mode: ModeArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Raw,
    Valuation,
}

#[derive(Args)]
struct SeedArg {
    #[arg(long, env = "PARTIAL_RV_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesise the generalised monitor of an LTL formula.
    Synth {
        formula: PathBuf,
        /// Writes `<out>.dot` and `<out>.monitor`.
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        minimize: bool,
    },
    /// Run a monitor over a trace and print one JSON verdict per event.
    Run {
        #[command(flatten)]
        source: MonitorSource,
        /// Trace file, one event per line; `-` reads stdin.
        trace: String,
    },
    /// Encode a Büchi automaton as a ν-calculus term.
    Encode {
        automaton: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that a term pair covers every behaviour.
    Check { pair: PathBuf },
    /// Observation-structure laboratory.
    Lab {
        #[command(subcommand)]
        command: LabCommand,
    },
    /// Time synthesis and monitoring on random formulas and traces (CSV).
    Bench {
        #[arg(long, default_value_t = 100)]
        formulas: usize,
        #[arg(long, default_value_t = 5)]
        max_size: usize,
        #[arg(long, value_delimiter = ',', default_value = "1000,10000")]
        lengths: Vec<usize>,
        #[arg(long, value_enum, default_value_t = Backend::Dfa)]
        backend: Backend,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        seed: SeedArg,
    },
    /// Print a random instance.
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        #[arg(long, default_value_t = 5)]
        size: usize,
        #[command(flatten)]
        seed: SeedArg,
        /// Structures only: make the observations directed.
        #[arg(long)]
        directed: bool,
        /// Structures only: number of observations (default: size + 2).
        #[arg(long)]
        observations: Option<usize>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct MonitorSource {
    /// A monitor written by `synth`.
    #[arg(long)]
    monitor: Option<PathBuf>,
    /// An LTL formula file.
    #[arg(long)]
    formula: Option<PathBuf>,
    /// A term pair file (`t_S`, `===`, `t_coS`).
    #[arg(long)]
    ltnu: Option<PathBuf>,
}

#[derive(Subcommand)]
enum LabCommand {
    /// Print the pass/fail matrix of every result on a structure.
    Check {
        structure: PathBuf,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[command(flatten)]
        seed: SeedArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Formula,
    Term,
    Trace,
    Nba,
    Structure,
}

const USAGE: u8 = 64;
const DATA: u8 = 65;
const NO_INPUT: u8 = 66;
const INTERNAL: u8 = 70;
const CANT_CREATE: u8 = 73;
const IO_ERR: u8 = 74;

struct Failure {
    code: u8,
    error: anyhow::Error,
}

type Outcome = Result<u8, Failure>;

trait Code<T> {
    fn code(self, code: u8) -> Result<T, Failure>;
}

impl<T, E: Into<anyhow::Error>> Code<T> for Result<T, E> {
    fn code(self, code: u8) -> Result<T, Failure> {
        self.map_err(|e| Failure { code, error: e.into() })
    }
}

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).code(IO_ERR)?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure { code: NO_INPUT, error: anyhow!("{path}: {e}") })
}

fn read_path(path: &Path) -> Result<String, Failure> {
    read_input(&path.to_string_lossy())
}

fn write_output(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    fs::write(path, bytes)
        .map_err(|e| Failure { code: CANT_CREATE, error: anyhow!("{}: {e}", path.display()) })
}

fn interpretation(cli: &Cli, inferred: Vec<String>) -> Result<Interpretation, Failure> {
    let props = cli.props.clone().unwrap_or(inferred);
    let mode = match cli.mode {
        ModeArg::Raw => Mode::RawSymbol,
        ModeArg::Valuation => Mode::Valuation,
    };
    Interpretation::new(&props, mode).code(DATA)
}

fn exit_code(v: Verdict6) -> u8 {
    match v {
        Verdict6::Yes => 0,
        Verdict6::No => 1,
        Verdict6::Unknown | Verdict6::UnknownYes | Verdict6::UnknownNo => 2,
        Verdict6::Giveup => 3,
    }
}

fn synth(cli: &Cli, formula: &Path, out: &Path, minimize: bool) -> Outcome {
    let text = read_path(formula)?;
    let interp = interpretation(cli, scan_props(&text, FORMULA_KEYWORDS))?;
    let phi = read_formula(&text, &interp).code(DATA)?;
    let m = GeneralisedMonitor::synthesize(&phi, &interp, SynthesisOptions { minimize }).code(INTERNAL)?;
    let bytes = postcard::to_allocvec(&m).code(INTERNAL)?;
    write_output(&out.with_extension("dot"), generalised_to_dot(&m).as_bytes())?;
    write_output(&out.with_extension("monitor"), &bytes)?;
    eprintln!("{} states, initial verdict {}", m.num_states(), m.label(m.initial()));
    Ok(0)
}

#[derive(serde::Serialize)]
struct Line<'a> {
    index: usize,
    event: &'a str,
    verdict: String,
}

type Step = Box<dyn FnMut(Event) -> anyhow::Result<Verdict6>>;

fn dfa_stepper(m: GeneralisedMonitor) -> (Interpretation, Verdict6, Step) {
    let interp = m.interpretation().clone();
    let mut q = m.initial();
    let initial = m.label(q);
    let step = move |e: Event| {
        let i = m.interpretation().event_index(e).ok_or_else(|| anyhow!("event is not in the alphabet"))?;
        q = m.next(q, i);
        Ok(m.label(q))
    };
    (interp, initial, Box::new(step))
}

fn run(cli: &Cli, source: &MonitorSource, trace: &str) -> Outcome {
    let (interp, mut verdict, mut step) = if let Some(path) = &source.monitor {
        let bytes = fs::read(path)
            .map_err(|e| Failure { code: NO_INPUT, error: anyhow!("{}: {e}", path.display()) })?;
        dfa_stepper(postcard::from_bytes(&bytes).code(DATA)?)
    } else if let Some(path) = &source.formula {
        let text = read_path(path)?;
        let interp = interpretation(cli, scan_props(&text, FORMULA_KEYWORDS))?;
        let phi = read_formula(&text, &interp).code(DATA)?;
        dfa_stepper(
            GeneralisedMonitor::synthesize(&phi, &interp, SynthesisOptions::default()).code(INTERNAL)?,
        )
    } else {
        let path = source.ltnu.as_ref().expect("clap requires one monitor source");
        let text = read_path(path)?;
        let interp = interpretation(cli, scan_props(&text, TERM_KEYWORDS))?;
        let (ts, tc) = read_pair(&text, &interp).code(DATA)?;
        let engine = SharedEngine::new(&interp);
        let (ts, tc) = (engine.intern(&ts), engine.intern(&tc));
        let mut m = engine.generalised(ts, tc).code(DATA)?;
        let initial = m.verdict();
        let step: Step = Box::new(move |e| Ok(m.step(e)?));
        (interp, initial, step)
    };
    let trace = read_trace(&read_input(trace)?, &interp).code(DATA)?;

    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    for (index, &e) in trace.iter().enumerate() {
        verdict = step(e).code(DATA)?;
        let event = interp.event_name(e);
        let line = Line { index, event: &event, verdict: verdict.to_string() };
        serde_json::to_writer(&mut out, &line).code(IO_ERR)?;
        out.write_all(b"\n").code(IO_ERR)?;
    }
    out.flush().code(IO_ERR)?;
    Ok(exit_code(verdict))
}

fn encode_cmd(automaton: &Path, out: Option<&Path>) -> Outcome {
    let (a, interp) = read_automaton(&read_path(automaton)?).code(DATA)?;
    let report = enforce_property1(&a);
    if let Some(v) = report.violation() {
        eprintln!("warning: {v}");
    }
    let text = encode(&report.automaton, &interp).to_text(&interp) + "\n";
    match out {
        Some(path) => write_output(path, text.as_bytes())?,
        None => io::stdout().write_all(text.as_bytes()).code(IO_ERR)?,
    }
    Ok(0)
}

fn check(cli: &Cli, pair: &Path) -> Outcome {
    let text = read_path(pair)?;
    let interp = interpretation(cli, scan_props(&text, TERM_KEYWORDS))?;
    let (ts, tc) = read_pair(&text, &interp).code(DATA)?;
    let engine = SharedEngine::new(&interp);
    let (ts, tc) = (engine.intern(&ts), engine.intern(&tc));
    if engine.covers(ts, tc) {
        println!("pass: t_S | t_coS is provable");
        Ok(0)
    } else {
        println!("fail: t_S | t_coS is not provable");
        Ok(1)
    }
}

fn lab_check(structure: &Path, samples: usize, seed: u64) -> Outcome {
    let s = read_structure(&read_path(structure)?).code(DATA)?;
    let violations = s.violations();
    if !violations.is_empty() {
        let lines: Vec<String> = violations.iter().map(|v| s.describe(v)).collect();
        return Err(Failure { code: DATA, error: anyhow!("invalid structure:\n  {}", lines.join("\n  ")) });
    }
    let cfg = SuiteConfig { samples, seed, ..SuiteConfig::default() };
    let report = lab::run_suite(&s, &cfg);
    println!(
        "{} behaviours, {} observations, {}directed, {} properties ({})",
        s.num_behaviours(),
        s.num_observations(),
        if report.directed { "" } else { "not " },
        report.properties,
        if report.exhaustive { "all" } else { "sampled" },
    );
    print!("{report}");
    Ok(if report.passed() { 0 } else { 1 })
}

fn bench_cmd(cfg: BenchConfig, out: Option<&Path>) -> Outcome {
    let records = bench::run(&cfg).code(INTERNAL)?;
    match out {
        Some(path) => {
            let file = fs::File::create(path)
                .map_err(|e| Failure { code: CANT_CREATE, error: anyhow!("{}: {e}", path.display()) })?;
            bench::write_csv(&records, BufWriter::new(file)).code(IO_ERR)?;
        }
        None => bench::write_csv(&records, io::stdout().lock()).code(IO_ERR)?,
    }
    Ok(0)
}

fn gen(
    cli: &Cli,
    kind: GenKind,
    size: usize,
    seed: u64,
    directed: bool,
    observations: Option<usize>,
) -> Outcome {
    if size == 0 {
        return Err(Failure { code: USAGE, error: anyhow!("--size must be at least 1") });
    }
    let mut r = rng(seed);
    let default_props = || vec!["a".to_string(), "b".to_string()];
    let text = match kind {
        GenKind::Structure => {
            random_structure(&mut r, size, observations.unwrap_or(size + 2), directed).to_string()
        }
        GenKind::Nba => {
            let interp = interpretation(cli, default_props())?;
            write_automaton(&random_nba(&mut r, size, interp.num_events()), &interp)
        }
        GenKind::Formula => {
            let interp = interpretation(cli, default_props())?;
            random_formula(&mut r, &interp, size).to_text(&interp) + "\n"
        }
        GenKind::Term => {
            let interp = interpretation(cli, default_props())?;
            random_term(&mut r, &interp, size).to_text(&interp) + "\n"
        }
        GenKind::Trace => {
            let interp = interpretation(cli, default_props())?;
            write_trace(&random_trace(&mut r, &interp, size), &interp)
        }
    };
    io::stdout().write_all(text.as_bytes()).code(IO_ERR)?;
    Ok(0)
}

fn dispatch(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Synth { formula, out, minimize } => synth(cli, formula, out, *minimize),
        Command::Run { source, trace } => run(cli, source, trace),
        Command::Encode { automaton, out } => encode_cmd(automaton, out.as_deref()),
        Command::Check { pair } => check(cli, pair),
        Command::Lab { command: LabCommand::Check { structure, samples, seed } } => {
            lab_check(structure, *samples, seed.seed)
        }
        Command::Bench { formulas, max_size, lengths, backend, out, seed } => {
            if *max_size == 0 {
                return Err(Failure { code: USAGE, error: anyhow!("--max-size must be at least 1") });
            }
            let interp = interpretation(cli, vec!["a".into(), "b".into()])?;
            let cfg = BenchConfig {
                formulas: *formulas,
                max_size: *max_size,
                lengths: lengths.clone(),
                interp,
                seed: seed.seed,
                backend: *backend,
            };
            bench_cmd(cfg, out.as_deref())
        }
        Command::Gen { kind, size, seed, directed, observations } => {
            gen(cli, *kind, *size, seed.seed, *directed, *observations)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
