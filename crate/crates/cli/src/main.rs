use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fibcat::dsl::{self, Outcome};
use fibcat::report::Report;
use serde_json::Value;

#[derive(Parser)]
#[command(name = "fibcat", version, about = "Bounded checks for finite categories, fibrations and internal categories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate every declaration
    Validate(Opts),
    /// Choice sets for every pair of objects
    IsbellCheck(Opts),
    /// The faithful functor into finite sets built from choice sets
    Concretize(Opts),
    /// Fam laws, cartesian lifts and a cleavage of the externalization
    Externalize(Opts),
    /// The fibrational Isbell condition for families
    FibIsbell(Opts),
    /// Concreteness of the externalization
    ConcreteCheck(Opts),
    /// The four smallness axioms
    SmallnessCheck(Opts),
}

#[derive(clap::Args)]
struct Opts {
    file: PathBuf,
    /// Largest index-set cardinality quantified over
    #[arg(long, env = "FIBCAT_BOUND", default_value_t = 3)]
    bound: usize,
    /// Write the JSON report here (`-` for stdout)
    #[arg(long)]
    json: Option<PathBuf>,
    /// Run on all available cores
    #[arg(long)]
    parallel: bool,
}

impl Command {
    fn split(&self) -> (&'static str, &Opts) {
        match self {
            Command::Validate(o) => ("validate", o),
            Command::IsbellCheck(o) => ("isbell-check", o),
            Command::Concretize(o) => ("concretize", o),
            Command::Externalize(o) => ("externalize", o),
            Command::FibIsbell(o) => ("fib-isbell", o),
            Command::ConcreteCheck(o) => ("concrete-check", o),
            Command::SmallnessCheck(o) => ("smallness-check", o),
        }
    }
}

fn status(r: &Value) -> &str {
    if r["status"] == "pass" {
        "pass"
    } else {
        "FAIL"
    }
}

fn print_concretization(sub: &Value) {
    let Some(functor) = sub["witnesses"].get(0) else {
        return;
    };
    for o in functor["objects"].as_array().into_iter().flatten() {
        println!("  U({}) = {}", o["object"].as_str().unwrap_or("?"), o["set"]);
    }
    for m in functor["morphisms"].as_array().into_iter().flatten() {
        println!("  U({}) = {}", m["morphism"].as_str().unwrap_or("?"), m["table"]);
    }
}

fn summarize(command: &str, report: &Report) {
    for sub in &report.witnesses {
        println!("{} {}: {}", sub["check"].as_str().unwrap_or(command), sub["subject"].as_str().unwrap_or("?"), status(sub));
        match command {
            "concretize" => print_concretization(sub),
            "isbell-check" => {
                for e in sub["witnesses"].as_array().into_iter().flatten() {
                    let size = &e["size"];
                    println!("  |Σ({}, {})| = {size}", e["source"].as_str().unwrap_or("?"), e["target"].as_str().unwrap_or("?"));
                }
            }
            _ => {}
        }
        if let Some(c) = sub.get("counterexample") {
            println!("  counterexample: {c}");
        }
    }
    let verdict = if report.is_pass() { "PASS" } else { "FAIL" };
    match report.bound {
        Some(b) if report.exhaustive => println!("{verdict} (bound {b}, exhaustive)"),
        Some(b) => println!("{verdict} (bound {b}, truncated)"),
        None => println!("{verdict}"),
    }
    for w in &report.warnings {
        println!("warning: {w}");
    }
}

fn run(command: &str, opts: &Opts) -> Result<Outcome, String> {
    let text = std::fs::read_to_string(&opts.file)
        .map_err(|e| format!("{}: {e}", opts.file.display()))?;
    let doc = dsl::parse(&text).map_err(|e| format!("{}:{e}", opts.file.display()))?;
    let mut outcome = dsl::run_check(&doc, command, opts.bound).map_err(|e| e.to_string())?;
    outcome.report.subject = opts.file.display().to_string();
    Ok(outcome)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, opts) = cli.command.split();
    let threads = if opts.parallel { 0 } else { 1 };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .expect("the global pool is configured once");

    let outcome = match run(command, opts) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if opts.json.as_deref() != Some(std::path::Path::new("-")) {
        summarize(command, &outcome.report);
    }
    if let Some(path) = &opts.json {
        let mut text = serde_json::to_string_pretty(&outcome.report.to_json()).expect("serializable");
        text.push('\n');
        let written = if path.as_os_str() == "-" {
            print!("{text}");
            Ok(())
        } else {
            std::fs::write(path, text)
        };
        if let Err(e) = written {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(outcome.exit_code as u8)
}
