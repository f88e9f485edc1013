use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

use commands::CliError;

/// Exact measures, trees and protocols for boolean functions.
///
/// Function files start with `n=<int>` followed by `table` and 2^n values,
/// or `poly` and lines `{i,j}: <rational>`. Indices are 1-based.
#[derive(Parser, Debug)]
#[command(name = "andlift", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// MBS, FMBS, FHSC and HSC at one point or maximized over all points.
    Measures {
        file: PathBuf,
        /// Point as a bit string (`0110`), a 1-based set (`{2,3}`) or `0`.
        /// Defaults to the all-zeros point.
        #[arg(long, conflicts_with = "global")]
        point: Option<String>,
        #[arg(long)]
        global: bool,
        #[arg(long)]
        json: bool,
    },
    /// Greedy 0-depth decision tree, or the AND tree derived from it.
    Tree {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = TreeKind::Zero)]
        kind: TreeKind,
        #[arg(long)]
        json: bool,
    },
    /// Simulates the two-party protocol of the AND tree on all input pairs,
    /// or on one pair.
    Protocol {
        file: PathBuf,
        /// Alice's input as a bit string; requires `--y`.
        #[arg(long, requires = "y")]
        x: Option<String>,
        /// Bob's input as a bit string; requires `--x`.
        #[arg(long, requires = "x")]
        y: Option<String>,
        /// Also run the full pipeline and print every bound it checks.
        #[arg(long)]
        report: bool,
        #[arg(long)]
        json: bool,
    },
    /// Rank over ℚ of the matrix `M[x][y] = f(x ∧ y)`.
    Rank {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Writes a member of a named family as a function file.
    Zoo {
        /// projective_plane, majority, and_or, redundant_indexing, threshold,
        /// first_zero_gap, or, and
        family: String,
        /// `m` for projective_plane, `k` for redundant_indexing, the number
        /// of clauses for and_or, `n` otherwise.
        param: usize,
        #[arg(long, value_enum, default_value_t = Emit::Poly)]
        emit: Emit,
    },
    /// Small hitting set or `m` disjoint sets after removing some `T`.
    Dichotomy {
        /// Set-system file: `n=<int>` then one `{i,j,...}` per line.
        file: PathBuf,
        m: usize,
        #[arg(long)]
        json: bool,
    },
    /// Runs the whole inequality suite. Exits with status 3 on any violation.
    Verify {
        #[arg(long, default_value_t = 3)]
        max_n: usize,
        /// Every function for each n, instead of random samples.
        #[arg(long, conflicts_with_all = ["samples", "seed"])]
        exhaustive: bool,
        /// Random functions per n.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TreeKind {
    Zero,
    And,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Emit {
    Poly,
    Table,
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Measures { file, point, global, json } => commands::measures(&file, point.as_deref(), global, json),
        Command::Tree { file, kind, json } => commands::tree(&file, kind == TreeKind::And, json),
        Command::Protocol { file, x, y, report, json } => {
            commands::protocol(&file, x.as_deref().zip(y.as_deref()), report, json)
        }
        Command::Rank { file, json } => commands::rank(&file, json),
        Command::Zoo { family, param, emit } => commands::zoo(&family, param, emit == Emit::Table),
        Command::Dichotomy { file, m, json } => commands::dichotomy(&file, m, json),
        Command::Verify { max_n, exhaustive, samples, seed, json } => commands::verify(max_n, exhaustive, samples, seed, json),
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(out: &str) {
    let _ = writeln!(io::stdout().lock(), "{}", out.trim_end());
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(out) => {
            emit(&out);
            ExitCode::SUCCESS
        }
        Err(CliError::Violations { report, count }) => {
            emit(&report);
            eprintln!("error: {count} violations");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
