//! Command-line front end of the grid realizer.
//!
//! Exit codes: 0 success, valid or realized; 1 negative verdict; 2 usage or
//! parse error; 3 resource limit reached.

mod commands;
pub mod io;
pub mod ledger;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use grid_realizer::complex::Format;
use grid_realizer::search::{Goal, Strategy};
use grid_realizer::RealizationMode;

/// Error carrying the exit code it maps to.
#[derive(Debug)]
pub struct Fail {
    pub code: u8,
    pub msg: String,
}

impl Fail {
    pub fn usage(msg: impl Into<String>) -> Self {
        Fail { code: 2, msg: msg.into() }
    }

    pub fn io(msg: impl Into<String>) -> Self {
        Fail { code: 2, msg: msg.into() }
    }
}

pub const EXIT_OK: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_LIMIT: u8 = 3;

#[derive(Parser)]
#[command(name = "grid-realizer", version, about = "Realize triangulated surfaces on small integer grids")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// V, E, F, Euler characteristic, orientability, genus and Heawood bound
    Analyze {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Verify coordinates against a triangulation
    Check {
        triangulation: PathBuf,
        coords: PathBuf,
        #[arg(long, default_value = "any")]
        mode: RealizationMode,
        #[command(flatten)]
        common: Common,
    },
    /// Search for a realization on the grid {0..extent}^3
    Realize {
        triangulation: PathBuf,
        #[arg(long)]
        extent: i64,
        #[arg(long, default_value = "general-position")]
        mode: RealizationMode,
        #[arg(long, value_enum, default_value = "first-witness")]
        goal: GoalArg,
        #[arg(long, value_enum, default_value = "fused")]
        strategy: StrategyArg,
        /// Also write OFF next to the coordinate file
        #[arg(long)]
        off: bool,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Smallest extent admitting a realization
    Bound {
        triangulation: PathBuf,
        #[arg(long, default_value = "general-position")]
        mode: RealizationMode,
        #[arg(long, default_value_t = 4)]
        max_extent: i64,
        #[arg(long, value_enum, default_value = "fused")]
        strategy: StrategyArg,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Largest subset of {0..extent}^3 in general position
    Gpmax {
        #[arg(long)]
        extent: i64,
        /// Stop once a set of this size is found
        #[arg(long)]
        target: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// List all closed surfaces with the given number of vertices
    Enumerate {
        #[arg(long)]
        vertices: usize,
        #[arg(long, allow_hyphen_values = true)]
        chi: Option<i64>,
        #[arg(long)]
        orientable: Option<bool>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Write a triangulation with coordinates as OFF or OBJ
    Export {
        triangulation: PathBuf,
        coords: PathBuf,
        #[arg(long, value_enum, default_value = "off")]
        to: MeshFormat,
        #[command(flatten)]
        common: Common,
    },
    /// Realize every triangulation of a file, recording results in the ledger;
    /// entries with a final record are skipped, so interrupted runs resume
    Batch {
        input: PathBuf,
        #[arg(long)]
        extent: i64,
        #[arg(long, default_value = "general-position")]
        mode: RealizationMode,
        #[arg(long, value_enum, default_value = "first-witness")]
        goal: GoalArg,
        #[arg(long, value_enum, default_value = "fused")]
        strategy: StrategyArg,
        /// Re-run entries that already have a final record
        #[arg(long)]
        force: bool,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Clone)]
pub struct Common {
    /// Triangulation file format; detected from the content when omitted
    #[arg(long, value_parser = io::parse_format)]
    format: Option<Format>,
    /// Write the main result to this file instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print JSON instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Args, Clone)]
pub struct SearchArgs {
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long)]
    node_limit: Option<u64>,
    /// Seconds
    #[arg(long)]
    time_limit: Option<f64>,
    /// Keep the first witness independent of thread timing
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    deterministic: bool,
    /// Ledger file; defaults to $GRID_REALIZER_LEDGER, then ./grid-realizer-ledger.jsonl
    #[arg(long)]
    ledger: Option<PathBuf>,
    /// Do not record the result
    #[arg(long)]
    no_ledger: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum GoalArg {
    FirstWitness,
    Exhaust,
}

impl From<GoalArg> for Goal {
    fn from(g: GoalArg) -> Goal {
        match g {
            GoalArg::FirstWitness => Goal::FirstWitness,
            GoalArg::Exhaust => Goal::Exhaust,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Fused,
    TwoPhase,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Strategy {
        match s {
            StrategyArg::Fused => Strategy::Fused,
            StrategyArg::TwoPhase => Strategy::TwoPhase,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
pub enum MeshFormat {
    Off,
    Obj,
}

fn run(cli: Cli) -> Result<u8, Fail> {
    use commands as c;
    match cli.command {
        Command::Analyze { input, common } => c::analyze(&input, &common),
        Command::Check { triangulation, coords, mode, common } => c::check(&triangulation, &coords, mode, &common),
        Command::Realize { triangulation, extent, mode, goal, strategy, off, search, common } => {
            let cfg = search.config(mode, strategy.into(), goal.into())?;
            c::realize(&triangulation, extent, &cfg, off, &search, &common)
        }
        Command::Bound { triangulation, mode, max_extent, strategy, search, common } => {
            let cfg = search.config(mode, strategy.into(), Goal::FirstWitness)?;
            c::bound(&triangulation, max_extent, &cfg, &search, &common)
        }
        Command::Gpmax { extent, target, common } => c::gpmax(extent, target, &common),
        Command::Enumerate { vertices, chi, orientable, workers, common } => {
            c::enumerate(vertices, chi, orientable, workers, &common)
        }
        Command::Export { triangulation, coords, to, common } => c::export(&triangulation, &coords, to, &common),
        Command::Batch { input, extent, mode, goal, strategy, force, search, common } => {
            let cfg = search.config(mode, strategy.into(), goal.into())?;
            c::batch(&input, extent, &cfg, force, &search, &common)
        }
    }
}

/// Parses the process arguments and runs the command.
pub fn main_entry() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
