//! Batch workbench for graded topologies over finite DeMorgan algebras.
//!
//! Exit status: 0 when every check passes, 1 when a hard-asserted property
//! fails (an invalid topology under `validate`, a law or implication
//! violation under `suite` or `corpus run`), 2 on usage, parse or cap
//! errors. Report-only findings never change the exit status.

use clap::{Args, Parser, Subcommand, ValueEnum};
use lftop::commands::{self, CliError, Operator, Outcome};
use lftop::report;
use lftop_core::Caps;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "lftop", version, about = "Exact workbench for graded topologies over finite DeMorgan algebras")]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Enumeration caps, e.g. `grid=1000000,table=20`.
    #[arg(long, global = true, value_parser = parse_caps)]
    caps: Option<Caps>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Args)]
struct Source {
    /// Model document to load.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Bundled counterexample model (cx1, cx2, cx3).
    #[arg(long)]
    corpus: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the gradation axioms of a topology.
    Validate {
        #[command(flatten)]
        source: Source,
        topology: String,
    },
    /// Closure of a set at a level.
    Closure(OpArgs),
    /// Interior of a set at a level.
    Interior(OpArgs),
    /// Semi-pre interior (join of semi-preopen subsets over the full grid).
    SpInterior(OpArgs),
    /// Semi-pre closure (meet of semi-preclosed supersets over the full grid).
    SpClosure(OpArgs),
    /// Theta closure (meet of closed sets whose interior contains the set).
    ThetaClosure(OpArgs),
    /// Theta interior (join of open sets whose closure fits in the set).
    ThetaInterior(OpArgs),
    /// Openness classes of a set at a level.
    ClassifySet {
        #[command(flatten)]
        source: Source,
        topology: String,
        set: String,
        level: String,
    },
    /// Function-class membership of a map between two topologies.
    ClassifyMap {
        #[command(flatten)]
        source: Source,
        map: String,
        t1: String,
        t2: String,
    },
    /// Evaluate a catalogued theorem's conditions on a model.
    Check {
        #[command(flatten)]
        source: Source,
        /// Theorem id: wspo-char-5, wspo-char-5b, wspc-char-8, wspc-char-3,
        /// bijective-3, levels, sep-T2, conn.
        theorem: String,
        map: String,
        t1: String,
        t2: String,
        /// Level argument, required by sep-T2 and conn.
        level: Option<String>,
    },
    /// Operate on the bundled counterexample models.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
    /// Search for a model separating a strict implication: in the second
    /// class but not the first. The bundled models are tried before seeded
    /// random ones.
    Search {
        class_a: String,
        class_b: String,
        #[arg(long, default_value_t = 10_000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the full property battery: corpus reports, operator laws,
    /// implications, equivalence matrices, separation/connectedness batch.
    Suite {
        /// Random models for the law and matrix passes; the separation
        /// batch uses twice as many.
        #[arg(long, default_value_t = 100)]
        seeds: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct OpArgs {
    #[command(flatten)]
    source: Source,
    topology: String,
    set: String,
    level: String,
}

#[derive(Subcommand)]
enum CorpusAction {
    /// Full verdict reports with audit trails for every bundled model.
    Run,
}

fn parse_caps(s: &str) -> Result<Caps, String> {
    let mut caps = Caps::default();
    for part in s.split(',') {
        match part.split_once('=') {
            Some(("grid", v)) => {
                caps.grid = v.parse().map_err(|_| format!("bad grid cap `{v}`"))?
            }
            Some(("table", v)) => {
                caps.table = v.parse().map_err(|_| format!("bad table cap `{v}`"))?
            }
            _ => return Err(format!("expected `grid=<n>` or `table=<n>`, found `{part}`")),
        }
    }
    Ok(caps)
}

fn run(cli: &Cli) -> Result<(&'static str, Outcome), CliError> {
    let caps = cli.caps.unwrap_or_default();
    match &cli.command {
        Command::Validate { source, topology } => {
            let reg = commands::load_registry(source.file.as_deref(), source.corpus.as_deref())?;
            Ok(("validate", commands::validate(&reg, topology, &caps)?))
        }
        Command::Closure(a) => op(a, Operator::Closure, &caps),
        Command::Interior(a) => op(a, Operator::Interior, &caps),
        Command::SpInterior(a) => op(a, Operator::SpInterior, &caps),
        Command::SpClosure(a) => op(a, Operator::SpClosure, &caps),
        Command::ThetaClosure(a) => op(a, Operator::ThetaClosure, &caps),
        Command::ThetaInterior(a) => op(a, Operator::ThetaInterior, &caps),
        Command::ClassifySet { source, topology, set, level } => {
            let reg = commands::load_registry(source.file.as_deref(), source.corpus.as_deref())?;
            Ok(("classify-set", commands::classify_set(&reg, topology, set, level, &caps)?))
        }
        Command::ClassifyMap { source, map, t1, t2 } => {
            let reg = commands::load_registry(source.file.as_deref(), source.corpus.as_deref())?;
            Ok(("classify-map", commands::classify_map(&reg, map, t1, t2, &caps)?))
        }
        Command::Check { source, theorem, map, t1, t2, level } => {
            let reg = commands::load_registry(source.file.as_deref(), source.corpus.as_deref())?;
            Ok((
                "check",
                commands::check(&reg, theorem, map, t1, t2, level.as_deref(), &caps)?,
            ))
        }
        Command::Corpus { action: CorpusAction::Run } => {
            Ok(("corpus-run", commands::corpus_run(&caps)?))
        }
        Command::Search { class_a, class_b, budget, seed } => Ok((
            "search",
            commands::search_cmd(class_a, class_b, *budget, *seed, &caps)?,
        )),
        Command::Suite { seeds, seed } => Ok(("suite", commands::suite_cmd(*seeds, *seed, &caps)?)),
    }
}

fn op(a: &OpArgs, operator: Operator, caps: &Caps) -> Result<(&'static str, Outcome), CliError> {
    let reg = commands::load_registry(a.source.file.as_deref(), a.source.corpus.as_deref())?;
    Ok((
        operator.name(),
        commands::operator(&reg, operator, &a.topology, &a.set, &a.level, caps)?,
    ))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((command, outcome)) => {
            let rendered = match cli.format {
                Format::Machine => report::render_machine(command, &outcome.report),
                Format::Text => report::render_text(command, &outcome.report),
            };
            // A closed pipe (e.g. piping into `head`) is not an error.
            use std::io::Write;
            let _ = std::io::stdout().write_all(rendered.as_bytes());
            if outcome.hard_failure {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
