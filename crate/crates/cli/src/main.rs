//! `subplanck` — deterministic command-line front end for phase-space
//! analysis of bipartite compass states.
//!
//! Subcommands: `section` (Wigner grid export), `tile` (interference-tile
//! measurement), `overlap` (displacement-sensitivity sweeps), `validate`
//! (conformance suite), `witness` (variance separability witness).
//!
//! Exit codes: 0 success, 2 configuration error, 3 numerical failure,
//! 4 unmet `--expect-lattice` expectation, 5 failed mandatory conformance
//! check.

mod commands;
mod config;

use std::path::PathBuf;

use clap::{ArgAction, Parser, Subcommand};
use subplanck::sensitivity::OverlapModel;

use config::Overrides;

/// Error classes mapped to process exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Invalid configuration, flags, or parameters (exit 2).
    Config(String),
    /// A numerical computation failed (exit 3).
    Numeric(String),
    /// An `--expect-*` assertion did not hold (exit 4).
    Expectation(String),
    /// File-system failure (exit 1).
    Io(String),
}

impl CliError {
    fn message(&self) -> &str {
        match self {
            CliError::Config(m)
            | CliError::Numeric(m)
            | CliError::Expectation(m)
            | CliError::Io(m) => m,
        }
    }

    fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            CliError::Config(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Expectation(_) => 4,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "subplanck",
    version,
    about = "Phase-space structure of bipartite compass states: Wigner sections, \
             interference tiles, displacement sensitivity, and validation"
)]
struct Cli {
    /// Path to a flat TOML config file (all keys optional).
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Override one config key, e.g. `--set x0=4` (repeatable).
    #[arg(long = "set", global = true, value_name = "KEY=VALUE", action = ArgAction::Append)]
    set: Vec<String>,

    /// Output directory (default: current directory).
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample the Wigner function over a section plane and export the grid.
    Section {
        /// Section plane: x1p1, x2p2, x1p2, x2p1, x1x2, or p1p2.
        #[arg(long)]
        plane: Option<String>,
        /// Grid format: csv (with JSON sidecar) or json (single document).
        #[arg(long)]
        format: Option<String>,
    },
    /// Measure the interference zero lattice and its fundamental tile.
    Tile {
        /// Section plane to scan.
        #[arg(long)]
        plane: Option<String>,
        /// Fail (exit 4) when no zero lattice is found.
        #[arg(long)]
        expect_lattice: bool,
    },
    /// Sweep displacement-overlap curves, or evaluate one shift with --s.
    Overlap {
        /// Overlap model: entangled, compass, or numeric.
        #[arg(long)]
        model: Option<String>,
        /// Evaluate a single shift instead of sweeping.
        #[arg(long)]
        s: Option<f64>,
    },
    /// Run the full conformance suite and write its report.
    Validate,
    /// Compute the collective-variance separability witness.
    Witness,
}

/// Applies the `SUBPLANCK_THREADS` worker cap before any parallel region
/// starts. Outputs are identical for every worker count; the cap only
/// bounds resource use.
fn init_threads() {
    let Ok(raw) = std::env::var("SUBPLANCK_THREADS") else {
        return;
    };
    match raw.trim().parse::<usize>() {
        Ok(n) if n >= 1 => {
            // Ignore the error from setting the pool twice (tests call this
            // repeatedly in one process).
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
        _ => eprintln!("warning: ignoring invalid SUBPLANCK_THREADS value '{raw}'"),
    }
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let overrides = Overrides {
        plane: match &cli.command {
            Command::Section { plane, .. } | Command::Tile { plane, .. } => plane.clone(),
            _ => None,
        },
        format: match &cli.command {
            Command::Section { format, .. } => format.clone(),
            _ => None,
        },
        out: cli.out.clone(),
    };
    let cfg = config::resolve(cli.config.as_deref(), &cli.set, overrides)?;
    match cli.command {
        Command::Section { .. } => commands::cmd_section(&cfg),
        Command::Tile { expect_lattice, .. } => commands::cmd_tile(&cfg, expect_lattice),
        Command::Overlap { model, s } => {
            let model = model
                .map(|m| m.parse::<OverlapModel>())
                .transpose()
                .map_err(|e| CliError::Config(e.to_string()))?;
            commands::cmd_overlap(&cfg, model, s)
        }
        Command::Validate => commands::cmd_validate(&cfg),
        Command::Witness => commands::cmd_witness(&cfg),
    }
}

fn main() {
    // Clap exits with code 2 on flag errors, matching the config class.
    let cli = Cli::parse();
    init_threads();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.exit_code()
        }
    };
    std::process::exit(code);
}
