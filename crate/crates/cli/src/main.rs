//! `placto`: crystal computations, plactic equivalence, column presentations,
//! and Squier coherent extensions from the command line.
//!
//! Exit codes: 0 for clean reports and positive answers, 1 for violations,
//! negative answers and non-confluence, 2 for usage or input errors.

mod commands;

use clap::{Parser, Subcommand};
use commands::{colpres, crystal, plactic};

#[derive(Parser)]
#[command(
    name = "placto",
    version,
    about = "Plactic monoids via crystals and rewriting"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Crystal bases: axiom checks, components, highest-weight words.
    Crystal {
        #[command(subcommand)]
        cmd: crystal::CrystalCmd,
    },
    /// Tableaux and plactic equivalence.
    Plactic {
        #[command(subcommand)]
        cmd: plactic::PlacticCmd,
    },
    /// Column presentations: build, criticals, coherent extensions.
    Colpres {
        #[command(subcommand)]
        cmd: colpres::ColpresCmd,
    },
}

fn main() {
    let cli = Cli::parse();
    let outcome = match cli.cmd {
        Cmd::Crystal { cmd } => crystal::run(cmd),
        Cmd::Plactic { cmd } => plactic::run(cmd),
        Cmd::Colpres { cmd } => colpres::run(cmd),
    };
    match outcome {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}
