use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod input;
mod render;
mod rules;

use rules::RuleArgs;

/// Distance rationalization of voting rules: winners, score tables, axiom
/// checks and replays of the known examples.
#[derive(Parser, Debug)]
#[command(name = "distrat", version)]
pub struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    /// Seed for every sampled election.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Tsv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Winner set, plus the full score table for distance-rationalized rules.
    Winners {
        file: PathBuf,
        #[command(flatten)]
        rule: RuleArgs,
    },
    /// Distance from the election to each consensus cell.
    Score {
        file: PathBuf,
        #[command(flatten)]
        rule: RuleArgs,
        /// Only this outcome, e.g. "a" or "a>b>c".
        #[arg(long)]
        outcome: Option<String>,
    },
    /// Check an axiom on a finite space of elections.
    Check {
        /// anonymity, neutrality, reversal, homogeneity, consistency or continuity.
        #[arg(long)]
        axiom: String,
        #[command(flatten)]
        rule: RuleArgs,
        #[command(flatten)]
        space: commands::SpaceArgs,
        /// Largest multiplier; defaults to 4 for homogeneity and 20 for continuity.
        #[arg(long)]
        k_max: Option<usize>,
    },
    /// Check every filled cell of the rationalization table against its classical rule.
    VerifyTable {
        /// Exhaustive part: all elections with m candidates and up to n voters.
        #[arg(long, default_value = "m3n4")]
        bound: String,
        /// Seeded random elections added to the space.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Shape of the random elections.
        #[arg(long, default_value = "m4n4")]
        sample_bound: String,
    },
    /// Earth mover distance between two elections with an optimal matching.
    Emd {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, default_value = "hamming")]
        metric: String,
        #[arg(long)]
        norm: Option<String>,
        #[arg(long)]
        p: Option<String>,
    },
    /// Replay a counterexample.
    Counterexample {
        #[arg(value_enum)]
        which: commands::Example,
        /// Copies of the base election.
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Voters in the uniqueness example (even, 4 to 8).
        #[arg(long, default_value_t = 6)]
        n: usize,
        /// Search range for the Dodgson crossover.
        #[arg(long, default_value_t = 10)]
        k_max: usize,
    },
    /// List every election with m candidates and n voters.
    Enumerate {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Distinguish voters (profiles) instead of counting ballots.
        #[arg(long)]
        identified: bool,
        /// Also write each election as a file in this directory.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

/// Misuse of flags or inputs; exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl From<distrat::Error> for UsageError {
    fn from(e: distrat::Error) -> Self {
        UsageError(e.to_string())
    }
}

fn init_threads() -> Result<(), UsageError> {
    if let Ok(v) = std::env::var("DISTRAT_THREADS") {
        let n: usize = v.parse().map_err(|_| UsageError(format!("DISTRAT_THREADS: '{v}' is not a number")))?;
        if n > 0 {
            rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| UsageError(e.to_string()))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = init_threads().and_then(|_| commands::run(&cli));
    match result {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
