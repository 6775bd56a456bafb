//! Argument parsing, command dispatch, and exit-code mapping.
//!
//! Exit codes: `0` success (and agreement for `compare`), `1` input or
//! validation failure (and disagreement for `compare`), `2` capacity or
//! resource limits — network too large for an engine, DNF term blow-up,
//! or a bounded run stopped by its length cap.

use std::fmt;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bnet::{
    build_transition_graph, find_all_attractors, Attractor, AttractorKind, BooleanNetwork,
    EngineConfig, EngineOutcome, NetworkFile, UpdateMode,
};

use crate::report::{cycle_strings, RunReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_CAPACITY: i32 = 2;

/// DOT export stays readable only for small graphs.
const EXPORT_GENE_LIMIT: usize = 12;

#[derive(Debug, Parser)]
#[command(
    name = "bnet",
    version,
    about = "Attractor analysis for Boolean gene-regulatory networks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Find the attractors of a network.
    Find(FindArgs),
    /// Run the bounded engine against the explicit oracle and compare.
    Compare(CompareArgs),
    /// Render the full transition graph as DOT.
    ExportDot(ExportDotArgs),
    /// Parse a network file and report structural findings.
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Sync,
    Async,
}

impl From<ModeArg> for UpdateMode {
    fn from(m: ModeArg) -> UpdateMode {
        match m {
            ModeArg::Sync => UpdateMode::Synchronous,
            ModeArg::Async => UpdateMode::Asynchronous,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    /// Bounded path search; finds fixed points and stable cycles.
    Bounded,
    /// Full transition-graph construction; also labels complex attractors.
    Explicit,
}

impl EngineArg {
    fn as_str(self) -> &'static str {
        match self {
            EngineArg::Bounded => "bounded",
            EngineArg::Explicit => "explicit",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputArg {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct FindArgs {
    /// Network file to analyse.
    #[arg(long)]
    pub input: PathBuf,
    /// Update mode.
    #[arg(long, value_enum, default_value_t = ModeArg::Sync)]
    pub mode: ModeArg,
    /// Attractor engine.
    #[arg(long, value_enum, default_value_t = EngineArg::Bounded)]
    pub engine: EngineArg,
    /// Starting path length for the bounded engine.
    #[arg(long, default_value_t = 1)]
    pub initial_length: usize,
    /// Safety valve on the doubled path length.
    #[arg(long, default_value_t = bnet::DEFAULT_LENGTH_CAP)]
    pub length_cap: usize,
    /// Report format.
    #[arg(long, value_enum, default_value_t = OutputArg::Text)]
    pub output: OutputArg,
    /// Worker threads for the explicit engine (default: all cores).
    #[arg(long)]
    pub workers: Option<usize>,
    /// Show unstable-cycle diagnostics in the text report.
    #[arg(long)]
    pub report_unstable: bool,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Network file to analyse.
    #[arg(long)]
    pub input: PathBuf,
    /// Update mode.
    #[arg(long, value_enum, default_value_t = ModeArg::Sync)]
    pub mode: ModeArg,
    /// Worker threads for the explicit engine (default: all cores).
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ExportDotArgs {
    /// Network file to analyse.
    #[arg(long)]
    pub input: PathBuf,
    /// Update mode.
    #[arg(long, value_enum, default_value_t = ModeArg::Sync)]
    pub mode: ModeArg,
    /// Write the graph here instead of standard output.
    #[arg(long)]
    pub dot: Option<PathBuf>,
    /// Worker threads for the explicit engine (default: all cores).
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Network file to check.
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Debug)]
enum CliError {
    Read { path: PathBuf, source: std::io::Error },
    Write { path: PathBuf, source: std::io::Error },
    Net(bnet::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Read { path, source } => {
                write!(f, "cannot read {}: {source}", path.display())
            }
            CliError::Write { path, source } => {
                write!(f, "cannot write {}: {source}", path.display())
            }
            CliError::Net(e) => e.fmt(f),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Read { .. } | CliError::Write { .. } => EXIT_FAILURE,
            CliError::Net(e) => match e {
                bnet::Error::TooLarge { .. } | bnet::Error::TermOverflow { .. } => EXIT_CAPACITY,
                _ => EXIT_FAILURE,
            },
        }
    }
}

/// Dispatch a parsed command line and return the process exit code.
pub fn run(cli: Cli) -> i32 {
    let result = match cli.command {
        Command::Find(args) => find(args),
        Command::Compare(args) => compare(args),
        Command::ExportDot(args) => export_dot(args),
        Command::Validate(args) => validate(args),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        e.exit_code()
    })
}

fn load(path: &Path) -> Result<(String, BooleanNetwork), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| CliError::Read { path: path.to_path_buf(), source })?;
    let net = bnet::parse_network(&text).map_err(CliError::Net)?;
    let name = path
        .file_stem()
        .map_or_else(|| "network".to_string(), |s| s.to_string_lossy().into_owned());
    Ok((name, net))
}

fn with_workers<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match workers {
        None => f(),
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .expect("worker pool")
            .install(f),
    }
}

fn find(args: FindArgs) -> Result<i32, CliError> {
    let (name, net) = load(&args.input)?;
    let mode: UpdateMode = args.mode.into();
    let start = Instant::now();
    let (attractors, unstable, final_length, capped) = match args.engine {
        EngineArg::Bounded => {
            let cfg = EngineConfig {
                mode,
                initial_length: args.initial_length,
                length_cap: args.length_cap,
            };
            let run = find_all_attractors(&net, &cfg).map_err(CliError::Net)?;
            let capped = run.outcome == EngineOutcome::LengthCapReached;
            (
                run.attractors.attractors,
                run.attractors.unstable_cycles_seen,
                Some(run.final_length as u64),
                capped,
            )
        }
        EngineArg::Explicit => {
            let tg = with_workers(args.workers, || build_transition_graph(&net, mode))
                .map_err(CliError::Net)?;
            (tg.classify_attractors(), tg.unstable_cycle_diagnostics(), None, false)
        }
    };
    let seconds = start.elapsed().as_secs_f64();
    let report = RunReport {
        network: name,
        genes: net.n(),
        mode: mode.as_str().to_string(),
        engine: args.engine.as_str().to_string(),
        attractors: attractors.iter().map(Into::into).collect(),
        unstable_cycles: unstable.iter().map(|c| cycle_strings(c)).collect(),
        seconds,
        final_length,
    };
    if mode == UpdateMode::Asynchronous
        && args.engine == EngineArg::Bounded
        && report.attractors.is_empty()
    {
        eprintln!(
            "warning: no fixed points or stable cycles; an asynchronous network can \
             settle in a complex attractor — rerun with --engine explicit"
        );
    }
    if capped {
        eprintln!("warning: length cap {} reached; results are partial", args.length_cap);
    }
    match args.output {
        OutputArg::Text => print!("{}", report.render_text(args.report_unstable)),
        OutputArg::Json => {
            println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"))
        }
    }
    Ok(if capped { EXIT_CAPACITY } else { EXIT_OK })
}

fn compare(args: CompareArgs) -> Result<i32, CliError> {
    let (name, net) = load(&args.input)?;
    let mode: UpdateMode = args.mode.into();
    let run = find_all_attractors(&net, &EngineConfig::new(mode)).map_err(CliError::Net)?;
    let bounded = run.attractors.attractors;
    let tg =
        with_workers(args.workers, || build_transition_graph(&net, mode)).map_err(CliError::Net)?;
    let (complex, explicit): (Vec<Attractor>, Vec<Attractor>) = tg
        .classify_attractors()
        .into_iter()
        .partition(|a| a.kind() == AttractorKind::Complex);

    println!("network {name}, mode {}", mode.as_str());
    let mut agree = true;
    let (mut i, mut j) = (0, 0);
    while i < bounded.len() || j < explicit.len() {
        match (bounded.get(i), explicit.get(j)) {
            (Some(b), Some(e)) if b == e => {
                println!("  agree          {b}");
                i += 1;
                j += 1;
            }
            (Some(b), Some(e)) if b < e => {
                println!("  bounded only   {b}");
                agree = false;
                i += 1;
            }
            (Some(_), Some(e)) => {
                println!("  explicit only  {e}");
                agree = false;
                j += 1;
            }
            (Some(b), None) => {
                println!("  bounded only   {b}");
                agree = false;
                i += 1;
            }
            (None, Some(e)) => {
                println!("  explicit only  {e}");
                agree = false;
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    for c in &complex {
        println!("  note           {c} (outside the bounded engine's scope)");
    }
    if agree {
        let plural = if bounded.len() == 1 { "" } else { "s" };
        println!("result: agree ({} attractor{plural})", bounded.len());
        Ok(EXIT_OK)
    } else {
        println!("result: disagree");
        Ok(EXIT_FAILURE)
    }
}

fn export_dot(args: ExportDotArgs) -> Result<i32, CliError> {
    let (name, net) = load(&args.input)?;
    if net.n() > EXPORT_GENE_LIMIT {
        eprintln!(
            "error: {} genes exceed the {EXPORT_GENE_LIMIT}-gene readability limit for DOT export",
            net.n()
        );
        return Ok(EXIT_CAPACITY);
    }
    let mode: UpdateMode = args.mode.into();
    let tg =
        with_workers(args.workers, || build_transition_graph(&net, mode)).map_err(CliError::Net)?;
    let attractors = tg.classify_attractors();
    let text = bnet::dot::transition_graph_dot(&tg, &attractors, &name);
    match args.dot {
        Some(path) => {
            std::fs::write(&path, text).map_err(|source| CliError::Write { path, source })?
        }
        None => print!("{text}"),
    }
    Ok(EXIT_OK)
}

fn validate(args: ValidateArgs) -> Result<i32, CliError> {
    let text = std::fs::read_to_string(&args.input)
        .map_err(|source| CliError::Read { path: args.input.clone(), source })?;
    let file = NetworkFile::parse(&text).map_err(|e| CliError::Net(bnet::Error::Parse(e)))?;
    for input in file.implicit_inputs() {
        println!("note: `{input}` is referenced but never defined; treated as a constant input");
    }
    for (target, line, count) in file.dropped_contradictions().map_err(CliError::Net)? {
        let plural = if count == 1 { "" } else { "s" };
        println!(
            "warning: line {line}: {count} contradictory conjunction{plural} in the function \
             of `{target}` can never hold and will be ignored"
        );
    }
    let net = file.compile().map_err(CliError::Net)?;
    let report = net.validate();
    for finding in &report.findings {
        println!("{}: {}", finding.severity, finding.message);
    }
    if report.has_errors() {
        println!("invalid: {} genes, {} findings", net.n(), report.findings.len());
        Ok(EXIT_FAILURE)
    } else {
        println!("ok: {} genes", net.n());
        Ok(EXIT_OK)
    }
}
