//! `numev`: exact classification of finite families of numerical events.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

use numev::classify::ClassFlag;
use numev::cli::{self, CmdOutcome, OutputFormat, SearchArgs, StatesMode};
use numev::search::Prefilter;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    /// Human-readable report.
    Text,
    /// Deterministic machine-readable JSON.
    Json,
}

impl From<FormatArg> for OutputFormat {
    fn from(value: FormatArg) -> OutputFormat {
        match value {
            FormatArg::Text => OutputFormat::Text,
            FormatArg::Json => OutputFormat::Json,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "numev",
    version,
    about = "Classify finite families of numerical events (S-probabilities), test Boolean subalgebra containment, verify state-based representations, and search small spaces exhaustively"
)]
struct Cli {
    /// Report format printed to stdout.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a family document: conditions (1)-(8) and all class flags.
    Classify {
        /// Family document (JSON with "states" and "events").
        path: PathBuf,
    },
    /// State axioms (S1)-(S5), fullness and uniformity.
    #[command(group(ArgGroup::new("mode").required(true).args(["check_canonical", "verify_table"])))]
    States {
        /// Family document or poset document with states.
        path: PathBuf,
        /// Evaluate the canonical states of a family document.
        #[arg(long)]
        check_canonical: bool,
        /// Evaluate the state table of a poset document.
        #[arg(long)]
        verify_table: bool,
    },
    /// Product criterion and exhaustive Boolean-subalgebra oracle for a
    /// chosen subset of a structured {0,1}-valued family.
    Subalgebra {
        /// Family document.
        path: PathBuf,
        /// Chosen events by zero-based index into the canonical order.
        #[arg(long, value_delimiter = ',', required = true)]
        elements: Vec<usize>,
    },
    /// Rebuild an event family from a poset document with states, or search
    /// for a two-valued representation of a family document.
    Represent { path: PathBuf },
    /// Enumerate families over a rational grid; verify the structural laws
    /// (default) or mine witnesses separating classes (--want/--avoid).
    Search {
        /// Number of states of the grid.
        #[arg(long)]
        states: usize,
        /// Grid values are multiples of 1/DENOMINATOR in \[0,1\].
        #[arg(long)]
        denominator: u64,
        /// Largest family size enumerated.
        #[arg(long)]
        max_size: usize,
        /// Structural prefilters: bounds, complement-closed, or none.
        #[arg(long, value_delimiter = ',', default_values_t = [String::from("bounds"), String::from("complement-closed")])]
        require: Vec<String>,
        /// Class flags every witness must have (e.g. C4 or weakly-structured).
        #[arg(long, value_delimiter = ',')]
        want: Vec<String>,
        /// Class flags every witness must lack.
        #[arg(long, value_delimiter = ',')]
        avoid: Vec<String>,
        /// Cap on families examined; exceeding it is reported as
        /// inconclusive (exit 5).
        #[arg(long)]
        budget: Option<usize>,
    },
}

fn parse_flags(raw: &[String]) -> Result<Vec<ClassFlag>, String> {
    raw.iter()
        .map(|s| ClassFlag::from_str(s).map_err(|e| e.to_string()))
        .collect()
}

fn parse_prefilters(raw: &[String]) -> Result<Vec<Prefilter>, String> {
    let mut prefilters = Vec::new();
    for item in raw {
        if item.trim().eq_ignore_ascii_case("none") {
            continue;
        }
        prefilters.push(Prefilter::from_str(item).map_err(|e| e.to_string())?);
    }
    Ok(prefilters)
}

fn run(cli: Cli) -> CmdOutcome {
    let format = cli.format.into();
    match cli.command {
        Command::Classify { path } => cli::cmd_classify(&path, format),
        Command::States {
            path,
            check_canonical,
            verify_table: _,
        } => {
            let mode = if check_canonical {
                StatesMode::CheckCanonical
            } else {
                StatesMode::VerifyTable
            };
            cli::cmd_states(&path, mode, format)
        }
        Command::Subalgebra { path, elements } => cli::cmd_subalgebra(&path, &elements, format),
        Command::Represent { path } => cli::cmd_represent(&path, format),
        Command::Search {
            states,
            denominator,
            max_size,
            require,
            want,
            avoid,
            budget,
        } => {
            let (require, want, avoid) = match (
                parse_prefilters(&require),
                parse_flags(&want),
                parse_flags(&avoid),
            ) {
                (Ok(r), Ok(w), Ok(a)) => (r, w, a),
                (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => {
                    return CmdOutcome {
                        exit_code: cli::EXIT_PARSE,
                        stdout: String::new(),
                        stderr: format!("error: {e}\n"),
                    }
                }
            };
            let args = SearchArgs {
                num_states: states,
                denominator,
                max_size,
                require,
                want,
                avoid,
                budget,
            };
            cli::cmd_search(&args, format)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    // Optional worker-count override for the parallel search partitioning;
    // results are identical for any worker count.
    if let Ok(workers) = std::env::var("NUMEV_WORKERS") {
        if let Ok(n) = workers.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build_global();
        }
    }

    let outcome = run(cli);
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    ExitCode::from(outcome.exit_code as u8)
}
