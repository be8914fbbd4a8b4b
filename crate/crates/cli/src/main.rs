//! `fincat`: command-line front end.
//!
//! Every command prints one JSON record per result on stdout (keys sorted,
//! rationals as `"a/b"` strings), or a plain table with `--table`.
//!
//! Exit codes: 0 success, 1 domain or validation error, 2 parse error,
//! 3 search budget exceeded. `FINCAT_WORKERS` sets the number of search
//! threads (default 1); output does not depend on it.

mod commands;
mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fincat::error::Error;
use fincat::stability::{SearchConfig, DEFAULT_BUDGET};

use input::{CliError, IoFailure};

#[derive(Parser, Debug)]
#[command(name = "fincat", version, about = "Structure and slope stability for quiver representations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print human-readable tables instead of JSON records.
    #[arg(long, global = true, conflicts_with = "json")]
    table: bool,
    /// Print JSON records (the default).
    #[arg(long, global = true)]
    json: bool,
    /// Cap on enumerated candidates for exhaustive searches.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
}

#[derive(Args, Debug, Clone, Default)]
pub struct ObjectArgs {
    /// Built-in algebra: a2, kronecker, dualnumbers, sl2block.
    #[arg(long)]
    pub preset: Option<String>,
    /// Algebra file.
    #[arg(long)]
    pub algebra: Option<PathBuf>,
    /// Representation file.
    #[arg(long)]
    pub rep: Option<PathBuf>,
    /// Named object of the preset or algebra (S<v>, P<v>, or a preset name such as M0).
    #[arg(long)]
    pub object: Option<String>,
    /// Field for named objects and censuses: Q or F<p> (default F2).
    #[arg(long)]
    pub field: Option<String>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct StabilityArgs {
    /// beta in the basis of indecomposable projectives, e.g. 3,1 or 1/2,-1.
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    /// gamma: `canonical` (default) or a nonnegative vector.
    #[arg(long)]
    pub gamma: Option<String>,
    /// Class alpha (dimension vector), e.g. 1,2.
    #[arg(long)]
    pub alpha: Option<String>,
    /// Stability file providing beta, gamma and optionally alpha.
    #[arg(long)]
    pub stability: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List built-in algebras and their named objects.
    Presets,
    /// Check an algebra and optionally a representation.
    Validate {
        #[command(flatten)]
        obj: ObjectArgs,
    },
    /// Print an algebra or representation in the text file format (ignores --json/--table).
    Export {
        #[command(flatten)]
        obj: ObjectArgs,
    },
    /// Pairing matrix <P_i, S_j>; with an object and --beta, also <beta, V>.
    Pairing {
        #[command(flatten)]
        obj: ObjectArgs,
        #[command(flatten)]
        stab: StabilityArgs,
    },
    /// Jordan–Hölder series, length and semisimplification.
    Jh {
        #[command(flatten)]
        obj: ObjectArgs,
    },
    /// beta-slope of an object.
    Slope {
        #[command(flatten)]
        obj: ObjectArgs,
        #[command(flatten)]
        stab: StabilityArgs,
    },
    /// beta-semistability with a destabilizing subobject as certificate.
    Ss {
        #[command(flatten)]
        obj: ObjectArgs,
        #[command(flatten)]
        stab: StabilityArgs,
    },
    /// Harder–Narasimhan filtration.
    Hn {
        #[command(flatten)]
        obj: ObjectArgs,
        #[command(flatten)]
        stab: StabilityArgs,
    },
    /// Weighted filtration maximizing mu_beta.
    Mu {
        #[command(flatten)]
        obj: ObjectArgs,
        #[command(flatten)]
        stab: StabilityArgs,
        /// Weights range over [-bound, bound].
        #[arg(long, default_value_t = 2)]
        weight_bound: i64,
    },
    /// Isomorphism classes of representations of class alpha over F_p.
    Census {
        #[command(flatten)]
        obj: ObjectArgs,
        #[command(flatten)]
        stab: StabilityArgs,
        /// Also count orbit sizes to certify completeness.
        #[arg(long)]
        orbits: bool,
    },
    /// Theta-strata (HN types) of the census of class alpha.
    Strata {
        #[command(flatten)]
        obj: ObjectArgs,
        #[command(flatten)]
        stab: StabilityArgs,
    },
    /// Check that every class-alpha representative is a quotient of the minimal projective cover.
    Cover {
        #[command(flatten)]
        obj: ObjectArgs,
        #[command(flatten)]
        stab: StabilityArgs,
    },
    /// The semisimple representative of each given class.
    ClosedPoints {
        #[command(flatten)]
        obj: ObjectArgs,
        /// Classes, each like 1,2; repeat the flag for several.
        #[arg(long = "alpha", required = true)]
        alphas: Vec<String>,
    },
}

fn workers() -> usize {
    std::env::var("FINCAT_WORKERS")
        .ok()
        .and_then(|w| w.trim().parse::<usize>().ok())
        .filter(|&w| w >= 1)
        .unwrap_or(1)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = SearchConfig {
        budget: cli.budget,
        workers: workers(),
    };
    match commands::run(&cli.command, &cfg) {
        Ok(output::Output::Text(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Ok(output::Output::Records(records)) => {
            let out = if cli.table {
                output::tables(&records)
            } else {
                output::json_lines(&records)
            };
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => report(e),
    }
}

fn report(e: CliError) -> ExitCode {
    match e {
        CliError::Lib(Error::Parse(p)) => {
            eprintln!("parse error: {p}");
            ExitCode::from(2)
        }
        CliError::Lib(e @ (Error::SearchBudgetExceeded { .. } | Error::IsoTestBudgetExceeded { .. })) => {
            let required = match &e {
                Error::SearchBudgetExceeded { required, .. } | Error::IsoTestBudgetExceeded { required, .. } => *required,
                _ => unreachable!(),
            };
            eprintln!("error: {e}");
            eprintln!("required budget: {required}");
            ExitCode::from(3)
        }
        CliError::Lib(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        CliError::Io(IoFailure(m)) => {
            eprintln!("error: cannot read {m}");
            ExitCode::from(1)
        }
        CliError::Usage(m) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
