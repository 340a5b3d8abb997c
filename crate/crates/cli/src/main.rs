mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "curvegraph", version, about = "Exact curvature analysis of weighted graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and check a graph or chain, then print its canonical form.
    Validate {
        /// Input file; standard input when omitted or `-`.
        file: Option<PathBuf>,
    },
    /// Inner/outer curvatures per vertex with sphere averages, as CSV.
    Curvature {
        file: Option<PathBuf>,
        #[arg(long)]
        root: String,
        /// Only rows for this radius.
        #[arg(long)]
        radius: Option<usize>,
    },
    /// Exact Ollivier curvature with an optimal integer witness, as JSON.
    Ollivier {
        file: Option<PathBuf>,
        /// Vertex pair `u,v`.
        #[arg(long, value_parser = parse_pair, required_unless_present = "all_adjacent", conflicts_with = "all_adjacent")]
        pair: Option<(String, String)>,
        /// Every adjacent pair instead of a single one.
        #[arg(long)]
        all_adjacent: bool,
    },
    /// Sphere curvatures next to those of the associated chain, as CSV.
    SphereCurv {
        file: Option<PathBuf>,
        #[arg(long)]
        root: String,
    },
    /// Associated birth-death chain in chain JSON.
    Bdc {
        file: Option<PathBuf>,
        #[arg(long)]
        root: String,
    },
    /// Print a built-in example graph or chain.
    Gen(GenArgs),
    /// Growth relations, volume ledger and optional constant for two rooted graphs.
    Compare(CompareArgs),
    /// Run the seeded property suite.
    Verify {
        #[arg(long, env = "CURVEGRAPH_SEED", default_value_t = 0)]
        seed: u64,
        /// Sample size per criterion relative to the base count of 100.
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        instances: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Example {
    Chain,
    Gprime,
    Figure1,
    Mirror,
    OllivierMatch,
}

#[derive(Args)]
struct GenArgs {
    example: Example,
    /// Horizon of chain, gprime, and of built-in mirror sources.
    #[arg(long)]
    n: Option<usize>,
    /// Source chain for `mirror`: `chain`, `gprime`, or a chain file.
    #[arg(long)]
    of: Option<String>,
    /// Comma-separated nonincreasing sequence for `ollivier-match`.
    #[arg(long)]
    seq: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct CompareArgs {
    /// First input, then second input (`-` for standard input).
    #[arg(num_args = 0..=2)]
    files: Vec<PathBuf>,
    /// Second input; the first then defaults to standard input.
    #[arg(long)]
    against: Option<PathBuf>,
    #[arg(long, default_value = "0")]
    root1: String,
    #[arg(long, default_value = "0")]
    root2: String,
    /// Also check the growth inequalities only from this radius on.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    outside: Option<u64>,
    /// Compute the volume constant for each orientation whose outside-finite relation holds.
    #[arg(long, requires = "outside")]
    constant: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

fn parse_pair(s: &str) -> Result<(String, String), String> {
    match s.split_once(',') {
        Some((u, v)) if !u.is_empty() && !v.is_empty() && !v.contains(',') => Ok((u.to_string(), v.to_string())),
        _ => Err(format!("expected `u,v`, got `{s}`")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(commands::Output { text, success }) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            if success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(commands::Failure::Usage(message)) => {
            use clap::CommandFactory;
            Cli::command().error(clap::error::ErrorKind::ArgumentConflict, message).exit()
        }
        Err(commands::Failure::Domain { kind, message }) => {
            let body = serde_json::json!({ "error": kind, "message": message });
            eprintln!("{body}");
            ExitCode::from(1)
        }
    }
}
