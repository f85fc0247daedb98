use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use strobj::config::PropertyConfig;
use strobj::interp::concrete::check_analyzer;
use strobj::interp::{analyze_program, parse_program, render_report, session_ctx, Format, Options};
use strobj::json::{decode_docs, object_to_json, ObjectDoc};
use strobj::object::StringObject;
use strobj::oracle::{check_galois, check_lattice_laws, check_soundness, CheckOutcome, SoundOp};
use strobj::word::Alphabet;

#[derive(Parser)]
#[command(name = "strobj", version, about = "Abstract interpretation over string objects")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum LatOp {
    Join,
    Meet,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a program and print per-line invariants.
    Analyze {
        file: PathBuf,
        /// Custom property configuration.
        #[arg(long)]
        props: Option<PathBuf>,
        /// Session alphabet; defaults to the letters in use plus one more.
        #[arg(long)]
        alphabet: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: OutFormat,
        #[arg(long, default_value_t = strobj::interp::analyzer::DEFAULT_WIDEN_DELAY)]
        widen_delay: usize,
        /// Candidate-word budget of exact reduction.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Reduce the object of a document.
    Reduce {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: OutFormat,
    },
    /// Join or meet the objects of two documents.
    Latop {
        #[arg(value_enum)]
        op: LatOp,
        first: PathBuf,
        second: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: OutFormat,
    },
    /// Run the randomized oracle suites.
    Check {
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: OutFormat,
    },
}

enum Failure {
    Diagnostic(String),
    Violation(String),
}

fn diag(e: impl std::fmt::Display) -> Failure {
    Failure::Diagnostic(e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Diagnostic(format!("{}: {e}", path.display())))
}

fn read_doc(path: &Path) -> Result<ObjectDoc, Failure> {
    let v: Value = serde_json::from_str(&read(path)?).map_err(|e| diag(format!("{}: {e}", path.display())))?;
    ObjectDoc::from_value(&v).map_err(|e| diag(format!("{}: {e}", path.display())))
}

fn print_object(o: &StringObject, sigma: &Alphabet, format: OutFormat) {
    match format {
        OutFormat::Text => println!("{o}"),
        OutFormat::Json => println!("{}", object_to_json(o, sigma)),
    }
}

fn analyze(
    file: &Path,
    props: Option<&Path>,
    alphabet: Option<&str>,
    format: OutFormat,
    widen_delay: usize,
    budget: Option<u64>,
) -> Result<(), Failure> {
    let src = read(file)?;
    let program = parse_program(&src).map_err(|e| diag(format!("{}:{e}", file.display())))?;
    let cfg = match props {
        Some(p) => PropertyConfig::load(p).map_err(|e| diag(format!("{}: {e}", p.display())))?,
        None => PropertyConfig::default(),
    };
    let sigma = alphabet.filter(|s| !s.is_empty()).map(Alphabet::from_str);
    let mut ctx = session_ctx(&program, &cfg, sigma).map_err(diag)?;
    if let Some(b) = budget {
        ctx = ctx.with_budget(b);
    }
    let opts = Options { widen_delay, ..Options::default() };
    let report = analyze_program(&program, &ctx, &opts).map_err(|e| Failure::Violation(e.to_string()))?;
    let format = match format {
        OutFormat::Text => Format::Text,
        OutFormat::Json => Format::Json,
    };
    print!("{}", render_report(&report, &ctx.sigma, format));
    Ok(())
}

fn check(max_len: usize, seed: u64, trials: usize, format: OutFormat) -> Result<(), Failure> {
    let mut outcomes: Vec<CheckOutcome> =
        SoundOp::ALL.iter().map(|&op| check_soundness(op, trials, seed, max_len)).collect();
    outcomes.push(check_lattice_laws(trials, seed));
    outcomes.push(check_galois(trials, seed, max_len));
    outcomes.push(check_analyzer(trials, seed, max_len));
    let passed = outcomes.iter().all(CheckOutcome::passed);
    match format {
        OutFormat::Text => outcomes.iter().for_each(|o| println!("{o}")),
        OutFormat::Json => println!("{}", json!({ "passed": passed, "suites": outcomes })),
    }
    if passed {
        Ok(())
    } else {
        Err(Failure::Violation(format!("{} suite(s) failed", outcomes.iter().filter(|o| !o.passed()).count())))
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Analyze { file, props, alphabet, format, widen_delay, budget } => {
            analyze(&file, props.as_deref(), alphabet.as_deref(), format, widen_delay, budget)
        }
        Command::Reduce { file, format } => {
            let (ctx, objs) = decode_docs(&[read_doc(&file)?]).map_err(diag)?;
            print_object(&objs[0].reduce(&ctx), &ctx.sigma, format);
            Ok(())
        }
        Command::Latop { op, first, second, format } => {
            let (ctx, objs) = decode_docs(&[read_doc(&first)?, read_doc(&second)?]).map_err(diag)?;
            let out = match op {
                LatOp::Join => objs[0].join(&objs[1], &ctx),
                LatOp::Meet => objs[0].meet(&objs[1], &ctx),
            };
            print_object(&out, &ctx.sigma, format);
            Ok(())
        }
        Command::Check { max_len, seed, trials, format } => check(max_len, seed, trials, format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(Failure::Diagnostic(msg))) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Ok(Err(Failure::Violation(msg))) => {
            eprintln!("invariant violation: {msg}");
            ExitCode::from(2)
        }
        Err(_) => ExitCode::from(2),
    }
}
