//! `cdsgame`: permutation and graph operations, exact game solving and
//! verification suites. Every command writes one JSON document to stdout.
//!
//! Exit codes: 0 success, 2 invalid input, 3 verification failure,
//! 4 size-bound refusal.

mod commands;
mod play;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

#[derive(Parser)]
#[command(name = "cdsgame", version, about = "Context directed swaps, gcds and the games played on them")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct Global {
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest permutation length for exhaustive work and the CDS solver.
    #[arg(long, global = true)]
    pub max_n: Option<usize>,
    /// Solver cache file, loaded before solving and rewritten afterwards.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Worker threads for batch fan-out in verification suites.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Operations on a single permutation.
    #[command(subcommand)]
    Perm(commands::PermCommand),
    /// gcds, gcds2 and isomorphism on graph JSON files.
    #[command(subcommand)]
    Graph(commands::GraphCommand),
    /// Generated families: triangle chains, favourable sets, full-pile permutations.
    #[command(subcommand)]
    Gen(commands::GenCommand),
    /// Exact game solving.
    #[command(subcommand)]
    Solve(commands::SolveCommand),
    /// Run a verification suite, or `all`.
    Verify(commands::VerifyArgs),
    /// Play against the engine on stdin.
    Play(play::PlayArgs),
    /// Solver cache files.
    #[command(subcommand)]
    Cache(commands::CacheCommand),
}

/// Why a command stopped early.
#[derive(Debug)]
pub enum Fail {
    Input(String),
    Bound(String),
    Verification(String),
}

impl Fail {
    fn code(&self) -> u8 {
        match self {
            Fail::Input(_) => 2,
            Fail::Verification(_) => 3,
            Fail::Bound(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Fail::Input(m) | Fail::Bound(m) | Fail::Verification(m) => m,
        }
    }
}

impl From<cds_core::Error> for Fail {
    fn from(e: cds_core::Error) -> Self {
        if e.is_bound() {
            Fail::Bound(e.to_string())
        } else {
            Fail::Input(e.to_string())
        }
    }
}

impl From<std::io::Error> for Fail {
    fn from(e: std::io::Error) -> Self {
        Fail::Input(e.to_string())
    }
}

/// A finished command: its JSON document and exit code.
pub struct Outcome {
    pub doc: Value,
    pub code: u8,
}

impl Outcome {
    pub fn ok(doc: Value) -> Self {
        Outcome { doc, code: 0 }
    }
}

fn render(doc: &Value, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(doc)
    } else {
        serde_json::to_string(doc)
    }
    .expect("JSON values always serialize")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = &cli.global;
    let result = match cli.command {
        Command::Perm(c) => commands::perm(c, g),
        Command::Graph(c) => commands::graph(c, g),
        Command::Gen(c) => commands::gen(c),
        Command::Solve(c) => commands::solve(c, g),
        Command::Verify(a) => commands::verify(a, g),
        Command::Play(a) => play::run(a, g),
        Command::Cache(c) => commands::cache(c, g),
    };
    match result {
        Ok(out) => {
            println!("{}", render(&out.doc, g.pretty));
            ExitCode::from(out.code)
        }
        Err(fail) => {
            let doc = serde_json::json!({ "error": fail.message(), "exit_code": fail.code() });
            eprintln!("{}", render(&doc, g.pretty));
            ExitCode::from(fail.code())
        }
    }
}
