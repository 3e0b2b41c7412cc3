use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

/// Shortest paths between Tower of Hanoi states.
#[derive(Debug, Parser)]
#[command(name = "hanoi", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Coords {
    /// Peg digits 0, 1, 2, largest disc first.
    Hanoi,
    /// Gasket symbols T, L, R, most significant first.
    Sg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphChoice {
    Sg,
    Hanoi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AverageMode {
    Exact,
    Sampled,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    #[arg(long)]
    pub from: String,
    #[arg(long)]
    pub to: String,
    #[arg(long, value_enum)]
    pub coords: Coords,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact shortest-path distance between two states.
    Distance(PairArgs),
    /// Whether the largest differing disc moves once or twice.
    Decide(PairArgs),
    /// An explicit shortest move sequence between two Hanoi states.
    Path {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Cross-check the machines against breadth-first search.
    Verify {
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        /// Corrupt one transition before verifying.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Exact constants, finite-n expectations and simulations.
    Stats(StatsArgs),
    /// Symbol reads of the machine against the two-alternative baseline.
    Bench {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// DOT rendering of a small state graph.
    Export {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        kind: GraphChoice,
    },
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("mode").required(true).args(["constants", "simulate", "finite_reads", "average"])))]
pub struct StatsArgs {
    /// Absorption times and expected-distance constants.
    #[arg(long)]
    pub constants: bool,
    /// Simulated stopping time of the decision machine.
    #[arg(long, requires_all = ["n", "samples", "seed"])]
    pub simulate: bool,
    /// Exact expected pairs read with `--n` pairs available.
    #[arg(long, requires = "n")]
    pub finite_reads: bool,
    /// Mean distance between two random vertices.
    #[arg(long, value_enum, requires = "n")]
    pub average: Option<AverageMode>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Defaults to json.
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
}

/// A failed command: exit code and message for stderr.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
    /// Printed to stdout before exiting, e.g. a failing verification report.
    pub output: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into(), output: String::new() }
    }
}

impl From<hanoi_core::Error> for Failure {
    fn from(e: hanoi_core::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Distance(args) => commands::distance(&args),
        Command::Decide(args) => commands::decide(&args),
        Command::Path { from, to, format } => commands::path(&from, &to, format),
        Command::Verify { max_n, format, inject_fault } => commands::verify(max_n, format, inject_fault),
        Command::Stats(args) => commands::stats(&args),
        Command::Bench { n, samples, seed, format } => commands::bench(n, samples, seed, format),
        Command::Export { n, kind } => commands::export(n, kind),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            print!("{}", f.output);
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
