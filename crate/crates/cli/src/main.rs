//! `pentachain` command-line driver.
//!
//! Exit codes: 0 success, 1 internal error, 2 parse or usage error, 3
//! validation error, 4 degenerate geometry, 5 non-acyclic complex, 6 failed
//! verification (a reproducer is printed in the report).

mod commands;
mod error;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pentachain::geometry::DEFAULT_RETRIES;
use pentachain::MoveKind;

use commands::{GeometryChoice, Input, PachnerOptions, VerifyOptions};

#[derive(Parser)]
#[command(name = "pentachain", version, about = "Exact SL(2) torsion invariant of triangulated 3-manifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Built-in triangulation: s3 or rp3.
    #[arg(long, conflicts_with = "file")]
    builtin: Option<String>,
    /// Triangulation file in `pentachain-tri v1` format.
    #[arg(long)]
    file: Option<PathBuf>,
}

impl InputArgs {
    fn input(&self) -> Input {
        Input {
            builtin: self.builtin.clone(),
            file: self.file.clone(),
        }
    }
}

#[derive(Args)]
struct GeometryArgs {
    /// Seed for every random choice.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Resampling attempts for nondegenerate coordinates.
    #[arg(long, default_value_t = DEFAULT_RETRIES)]
    retries: usize,
    /// Coordinate file with `vertex <id> <x> <y> <kappa>` lines.
    #[arg(long)]
    geometry: Option<PathBuf>,
}

impl GeometryArgs {
    fn choice(&self) -> GeometryChoice {
        GeometryChoice {
            seed: self.seed,
            retries: self.retries,
            file: self.geometry.clone(),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute the invariant of one triangulation.
    Invariant {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        geometry: GeometryArgs,
        #[arg(long)]
        json: bool,
        /// Add wall-clock time to the report (makes it non-reproducible).
        #[arg(long)]
        timing: bool,
    },
    /// Run the chain, acyclicity, gauge, pentagon and Pachner-walk checks.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        geometry: GeometryArgs,
        #[arg(long, default_value_t = 5)]
        walks: usize,
        #[arg(long, default_value_t = 20)]
        steps: usize,
        /// Pentagon and vector-identity samples.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Walks prefer shrinking moves above this many tetrahedra.
        #[arg(long, default_value_t = 16)]
        max_tets: usize,
        /// Only run the local five-point identities; no input needed.
        #[arg(long)]
        pentagon_only: bool,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        timing: bool,
    },
    /// Apply one move or a random walk and print the resulting triangulation.
    Pachner {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 10)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 16)]
        max_tets: usize,
        /// Apply a single move of this kind (2-3, 3-2, 1-4, 4-1) instead of a walk.
        #[arg(long = "move")]
        kind: Option<MoveKind>,
        /// Index into the enumerated sites of `--move`.
        #[arg(long, default_value_t = 0, requires = "kind")]
        site: usize,
        #[arg(long)]
        json: bool,
    },
    /// Check the pentagon identity and plane-vector identities on random samples.
    Pentagon {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long)]
        json: bool,
    },
    /// Print every nonzero matrix entry of the complex.
    DumpChain {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        geometry: GeometryArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Invariant {
            input,
            geometry,
            json,
            timing,
        } => commands::invariant(&input.input(), &geometry.choice(), *json, *timing),
        Command::Verify {
            input,
            geometry,
            walks,
            steps,
            samples,
            max_tets,
            pentagon_only,
            json,
            timing,
        } => commands::verify(
            &input.input(),
            &geometry.choice(),
            &VerifyOptions {
                walks: *walks,
                steps: *steps,
                samples: *samples,
                max_tets: *max_tets,
                pentagon_only: *pentagon_only,
                json: *json,
                timing: *timing,
            },
        ),
        Command::Pachner {
            input,
            steps,
            seed,
            max_tets,
            kind,
            site,
            json,
        } => commands::pachner(
            &input.input(),
            &PachnerOptions {
                steps: *steps,
                seed: *seed,
                max_tets: *max_tets,
                kind: *kind,
                site: *site,
                json: *json,
            },
        ),
        Command::Pentagon { seed, samples, json } => commands::pentagon(*seed, *samples, *json),
        Command::DumpChain { input, geometry } => commands::dump_chain(&input.input(), &geometry.choice()),
    };
    match result {
        Ok(outcome) => {
            print!("{}", outcome.output);
            ExitCode::from(outcome.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
