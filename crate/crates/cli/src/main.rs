//! `subspace-lab`: catalogues, analysis, functors and verification from the shell.
//!
//! Exit codes: 0 success, 2 unreadable input, 3 mathematically invalid
//! request, 4 failed verification.

mod commands;
mod values;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use values::parse_complex;

#[derive(Parser, Debug)]
#[command(name = "subspace-lab", version, about = "Systems of subspaces and projection tuples")]
pub struct Cli {
    /// Write the JSON result here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate catalogue systems.
    #[command(subcommand)]
    Catalog(CatalogCmd),
    /// Build projection tuples of the named families.
    #[command(subcommand)]
    Rep(RepCmd),
    /// Report End(S), transitivity, indecomposability and decompositions.
    Analyze {
        #[arg(long)]
        input: PathBuf,
    },
    /// Apply Coxeter functor words.
    #[command(subcommand)]
    Functor(FunctorCmd),
    /// The spectrum Σ_n.
    Sigma(SigmaArgs),
    /// Isomorphism and the λ correspondence.
    #[command(subcommand)]
    Iso(IsoCmd),
    /// Run every acceptance criterion.
    VerifyAll(VerifyArgs),
}

#[derive(Subcommand, Debug)]
pub enum CatalogCmd {
    /// One of Brenner's transitive quadruples.
    Brenner {
        /// Family tag: 1, 2, 3, 4a, 4b, 5a, 5b, 6a, 6b, 6c, 7a, 7b, 7c.
        #[arg(long)]
        family: String,
        #[arg(long)]
        r: Option<usize>,
        /// Family 1 parameter as re+imi.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        lambda: Option<subspace_lab::C64>,
        /// Emit the integer spanning matrices instead of orthonormal bases.
        #[arg(long)]
        raw: bool,
    },
    /// All transitive systems of n ≤ 3 subspaces.
    Small {
        #[arg(long)]
        n: usize,
    },
    /// Names of every Brenner quadruple and projection family up to a dimension.
    List {
        #[arg(long, default_value_t = 9)]
        umax: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum RepCmd {
    /// S(u,ρ), or S(2,0;a,b,c) with --omega.
    Family {
        #[arg(long, required_unless_present = "omega")]
        u: Option<usize>,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "omega")]
        rho: Option<i64>,
        /// Point (a, b, c) of Ω.
        #[arg(long, num_args = 3, allow_hyphen_values = true, value_names = ["A", "B", "C"])]
        omega: Option<Vec<f64>>,
        /// Emit the system of images instead of the projections.
        #[arg(long)]
        system: bool,
    },
    /// The irreducible tuples of n ≤ 3 projections.
    Small {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long, default_value_t = 0)]
        variant: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum FunctorCmd {
    /// Apply a word over {T, S}, left to right.
    Apply {
        #[arg(long)]
        word: String,
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Args, Debug)]
pub struct SigmaArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 10)]
    pub depth: usize,
    /// Test membership of this value instead of listing the set.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub json: bool,
    /// Also draw the set on a number line as SVG.
    #[arg(long)]
    pub plot: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum IsoCmd {
    /// Decide isomorphism of two systems, or unitary equivalence of two tuples.
    Check {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        /// Allow the subspaces of the left system to be rearranged.
        #[arg(long)]
        permute: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// λ(a, b, c) of a point of Ω.
    Lambda {
        #[arg(long, num_args = 3, allow_hyphen_values = true, value_names = ["A", "B", "C"])]
        omega: Vec<f64>,
    },
    /// The point of Ω with a given λ.
    Inverse {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        lambda: subspace_lab::C64,
    },
    /// The explicit isomorphism S(2,0;a,b,c) → B(2,0;λ).
    Witness {
        #[arg(long, num_args = 3, allow_hyphen_values = true, value_names = ["A", "B", "C"])]
        omega: Vec<f64>,
    },
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 9)]
    pub umax: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Print the JSON report instead of the table.
    #[arg(long)]
    pub json: bool,
    /// Run every sweep on one thread.
    #[arg(long)]
    pub sequential: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
