//! `lagrel`: command-line front end.
//!
//! Exit codes: 0 success, 1 invalid input, 2 closure bound exceeded,
//! 3 verification failure.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lagrel::verify::DEFAULT_SEED;

/// Closure bound used when `--max-components` is not given.
pub const DEFAULT_MAX_COMPONENTS: usize = 100_000;
pub const DEFAULT_DEGREE: u32 = 4;
pub const DEFAULT_DMAX: u32 = 6;

#[derive(Parser, Debug)]
#[command(name = "lagrel", version, about = "Lagrangian relations, root systems and their invariants")]
pub struct Cli {
    /// Write the output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct ClosureArgs {
    /// Abort the closure once it has more than N components.
    #[arg(long, value_name = "N", default_value_t = DEFAULT_MAX_COMPONENTS)]
    pub max_components: usize,
}

#[derive(Args, Debug, Clone)]
pub struct PairArgs {
    /// First point, comma separated rationals such as "1,0,-1/2".
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
    /// Second point.
    #[arg(long, allow_hyphen_values = true)]
    pub y: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Close the generators (or build the relation of a root system) and
    /// report its structure and invariant dimensions.
    Analyze {
        file: PathBuf,
        /// Highest degree of invariants to compute.
        #[arg(long, default_value_t = DEFAULT_DEGREE)]
        degree: u32,
        /// Highest degree searched for separating invariants.
        #[arg(long, default_value_t = DEFAULT_DMAX)]
        dmax: u32,
        /// Point pair "X;Y" to separate; may be repeated.
        #[arg(long = "separate", value_name = "X;Y", allow_hyphen_values = true)]
        pairs: Vec<String>,
        /// Include the canonical components in the report.
        #[arg(long)]
        components: bool,
        #[command(flatten)]
        closure: ClosureArgs,
    },
    /// Print bases of the invariant polynomials in each degree.
    Invariants {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_DEGREE)]
        degree: u32,
        #[command(flatten)]
        closure: ClosureArgs,
    },
    /// Decide whether two points are equivalent and find a separating invariant.
    Separate {
        file: PathBuf,
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value_t = DEFAULT_DMAX)]
        dmax: u32,
        #[command(flatten)]
        closure: ClosureArgs,
    },
    /// Print the discriminant and, for 1-regular relations, the polynomial T.
    Discriminant {
        file: PathBuf,
        #[command(flatten)]
        closure: ClosureArgs,
    },
    /// Root system commands.
    #[command(subcommand)]
    Wgrs(WgrsCommand),
    /// Run a seeded property suite: monoid, wgrs, invariants, reduction or product.
    Verify {
        suite: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum WgrsCommand {
    /// Emit a catalog root system: `gl M N` or `osp M N`.
    Build { family: String, m: usize, n: usize },
    /// Check the root system axioms.
    Validate { file: PathBuf },
    /// Build the Lagrangian equivalence relation of a root system.
    Relation {
        file: PathBuf,
        #[command(flatten)]
        closure: ClosureArgs,
    },
    /// Reduce by an isotropic root to `α^⊥/Cα`.
    Reduce {
        file: PathBuf,
        /// The isotropic root, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        root: String,
    },
    /// Decide `y ∈ W(x + span S)` for a maximal iso-set `S` orthogonal to `x`.
    Classes {
        file: PathBuf,
        #[command(flatten)]
        pair: PairArgs,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(commands::EXIT_INVALID_INPUT)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
