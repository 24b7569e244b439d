//! Command-line front end for `rbcoalg-core`.
//!
//! Exit codes: 0 pass, 1 check failed or verdict "no", 2 parse or usage
//! error, 3 characteristic guard, 4 undecided (search budget exhausted).

pub mod commands;
pub mod format;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rbcoalg_core::cohomology::Complex;

pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Debug, Parser)]
#[command(name = "rbcoalg", version, about = "Weighted Rota-Baxter Lie coalgebras: checks, cohomology, extensions")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Expected field (`Q`, `GF(5)`, `5`); input files over another field are rejected.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Expected weight λ; also the weight used by `classify` without input files.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// Candidate limit for exhaustive searches.
    #[arg(long, global = true, env = "RBCOALG_BUDGET", default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Accept input structures that fail their checkers.
    #[arg(long, global = true)]
    pub raw: bool,
    /// Human-readable report instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Seed for randomized output (`extend` basis scrambling).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Write the produced document here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ComplexArg {
    Plain,
    Tilde,
    Rb,
    RbReduced,
}

impl From<ComplexArg> for Complex {
    fn from(c: ComplexArg) -> Complex {
        match c {
            ComplexArg::Plain => Complex::Plain,
            ComplexArg::Tilde => Complex::Tilde,
            ComplexArg::Rb => Complex::Rb,
            ComplexArg::RbReduced => Complex::RbReduced,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check every axiom of the structure in FILE.
    Verify { file: PathBuf },
    /// Cohomology dimensions of a comodule (or the adjoint comodule of a coalgebra).
    Cohomology {
        file: PathBuf,
        /// Comodule over the coalgebra in FILE.
        comodule: Option<PathBuf>,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "rb")]
        complex: ComplexArg,
    },
    /// The dual Rota-Baxter Lie algebra.
    Dualize { file: PathBuf },
    /// The semidirect extension of a 2-cocycle.
    Extend { cocycle: PathBuf },
    /// The 2-cocycle of an extension with respect to its retraction.
    CocycleOf { extension: PathBuf },
    /// Decide whether two 2-cocycles are equivalent; --output receives the witness.
    Equivalent { first: PathBuf, second: PathBuf },
    /// Decide whether an automorphism pair lifts; --output receives the witness.
    Extensible { extension: PathBuf, pair: PathBuf },
    /// The Wells class of an automorphism pair.
    Wells { extension: PathBuf, pair: PathBuf },
    /// Equivalence classes of 2-cocycles over a prime field.
    Classify {
        /// Coalgebra C (defaults to the zero coalgebra of dimension --dim-c).
        c: Option<PathBuf>,
        /// Coalgebra M (defaults to the zero coalgebra of dimension --dim-m).
        m: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        dim_c: usize,
        #[arg(long, default_value_t = 1)]
        dim_m: usize,
    },
    /// Exactness of the Wells sequences of an extension.
    WellsSequence { extension: PathBuf },
}
