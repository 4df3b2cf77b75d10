//! `phl`: command-line front end for the presheaf homotopy library.

mod commands;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use phl_core::Guard;

#[derive(Parser, Debug)]
#[command(name = "phl", version, about = "Homotopy, lifting and monad checks on finite presheaves")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Cylinder instance (set2, graphI, rgraphI, sset-delta1, sset-jinf);
    /// inferred from the inputs when omitted.
    #[arg(long, global = true)]
    pub instance: Option<String>,
    /// Truncation cap for words, paths and simplicial dimension.
    #[arg(long, global = true, default_value_t = 2)]
    pub cap: usize,
    /// Anodyne generation depth.
    #[arg(long, global = true, default_value_t = 1)]
    pub depth: usize,
    /// Search budget; overrides PHL_GUARD.
    #[arg(long, global = true)]
    pub guard: Option<u64>,
    /// Write the report here (for `fixtures`: the target directory).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Record wall-clock time in the report.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Homotopy classes [X, A].
    Classes { x: PathBuf, a: PathBuf },
    /// Searches a homotopy between two maps.
    Homotopy { f: PathBuf, g: PathBuf },
    /// Solves a lifting square.
    Lift { square: PathBuf },
    /// Naive fibrancy of an object against an anodyne family.
    Fibrant {
        x: PathBuf,
        #[arg(long)]
        family: Option<PathBuf>,
    },
    /// Generates an anodyne family.
    Anodyne {
        #[arg(long)]
        seeds: Option<PathBuf>,
        #[arg(long)]
        generators: Option<PathBuf>,
    },
    /// T-weak equivalence of a map against an algebra family.
    Tweq {
        f: PathBuf,
        /// Algebra documents; defaults to the corpus family for the base.
        #[arg(long = "algebra")]
        algebras: Vec<PathBuf>,
    },
    /// Saturation witness: set retract or graph tower.
    #[command(name = "witness-m2")]
    WitnessM2 { x: PathBuf },
    /// Checks the cylinder axioms on the sample corpus.
    #[command(name = "check-ehd")]
    CheckEhd,
    /// Horn filling in a simplicial set or the nerve of a category.
    #[command(name = "horn-fill")]
    HornFill {
        x: PathBuf,
        /// Dimension of the horns; all of 1..=min(cap, 3) when omitted.
        #[arg(long)]
        n: Option<usize>,
        /// Missing face; all faces when omitted.
        #[arg(long)]
        k: Option<usize>,
        /// Only inner horns.
        #[arg(long)]
        inner: bool,
    },
    /// The nerve of a category, truncated at the cap.
    Nerve { category: PathBuf },
    /// Homotopy classes through the J^∞ cylinder.
    Tau0 { x: PathBuf, a: PathBuf },
    /// Runs a built-in invariant suite.
    Verify {
        #[arg(long, default_value = "core")]
        suite: String,
    },
    /// Writes the fixture corpus.
    Fixtures,
}

impl Global {
    pub fn guard(&self) -> Guard {
        if let Some(n) = self.guard {
            return Guard(n);
        }
        std::env::var("PHL_GUARD")
            .ok()
            .and_then(|v| v.parse().ok())
            .map(Guard)
            .unwrap_or_default()
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    match commands::run(&cli, argv) {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("phl: {e}");
            ExitCode::from(2)
        }
    }
}
