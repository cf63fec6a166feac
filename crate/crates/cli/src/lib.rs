//! Command-line front end for the `ladr` library: file formats, SVG rendering
//! and the `adjust`, `verify`, `hitset`, `gadget` and `render` commands.
//!
//! Exit codes: 0 success, 1 a verification came out false, 2 parse or usage
//! error, 3 exact-solve cap exceeded.

pub mod commands;
pub mod io;
pub mod svg;

use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub use commands::run;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {message}")]
    Parse { path: String, message: String },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] ladr::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(ladr::Error::ExactCapExceeded { .. }) => 3,
            CliError::Core(ladr::Error::VerificationFailed(_) | ladr::Error::NotSeparating(..)) => 1,
            _ => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "ladr", version, about = "Order-preserving layout adjustment for rectangles")]
pub struct Cli {
    /// Accept decimal coordinates and arguments, converted exactly.
    #[arg(long, global = true)]
    pub lossy: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute a disjoint, order-preserving layout.
    Adjust(AdjustArgs),
    /// Check a layout against an instance.
    Verify(VerifyArgs),
    /// Exact line hitting sets for a point set.
    Hitset(HitsetArgs),
    /// Build the point-set gadget of a 3-CNF formula.
    Gadget(GadgetArgs),
    /// Draw a layout or a point set as SVG.
    Render(RenderArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScheduleArg {
    Exact,
    Geometric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepArg {
    Frontier,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ObjectiveArg {
    Area,
    Perimeter,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    Guided,
    Exact,
}

#[derive(Debug, Args)]
pub struct AdjustArgs {
    pub instance: PathBuf,
    #[arg(long, default_value = "1/10")]
    pub eps: String,
    #[arg(long, value_enum, default_value_t = ScheduleArg::Exact)]
    pub schedule: ScheduleArg,
    /// Growth ratio of the geometric schedule; implies `--schedule geometric`.
    #[arg(long)]
    pub mu: Option<String>,
    #[arg(long, value_enum, default_value_t = SweepArg::Frontier)]
    pub sweep: SweepArg,
    #[arg(long, value_enum, default_value_t = ObjectiveArg::Area)]
    pub objective: ObjectiveArg,
    #[arg(long, value_enum, default_value_t = EngineArg::Guided)]
    pub engine: EngineArg,
    /// Write the LP of the chosen cell as text.
    #[arg(long)]
    pub dump_lp: Option<PathBuf>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub instance: PathBuf,
    pub layout: PathBuf,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("mode").required(true).multiple(false)))]
pub struct HitsetArgs {
    pub points: PathBuf,
    /// Minimum separating line set.
    #[arg(long, group = "mode")]
    pub exact: bool,
    /// Is there a separating set with at most R horizontal and C vertical lines?
    #[arg(long, group = "mode", num_args = 2, value_names = ["R", "C"])]
    pub decide: Option<Vec<usize>>,
    /// Least unit-square layout area over all separating sets.
    #[arg(long, group = "mode")]
    pub oracle_area: bool,
    /// Least unit-square layout perimeter over all separating sets.
    #[arg(long, group = "mode")]
    pub oracle_perimeter: bool,
    /// Check whether the lines in this file separate the points.
    #[arg(long, group = "mode", value_name = "LINES")]
    pub check: Option<PathBuf>,
    #[arg(long, default_value_t = ladr::hitting::DEFAULT_EXACT_CAP)]
    pub exact_cap: usize,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GadgetArgs {
    /// DIMACS CNF file.
    #[arg(required_unless_present = "random_vars", conflicts_with = "random_vars")]
    pub cnf: Option<PathBuf>,
    /// Generate a random formula with this many variables (a multiple of 3),
    /// each occurring in exactly five clauses.
    #[arg(long)]
    pub random_vars: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Skip the exactly-five-occurrences and 3m = 5n checks.
    #[arg(long)]
    pub relaxed_occurrence: bool,
    /// Perturbation size; defaults to 1/(100m).
    #[arg(long)]
    pub epsilon: Option<String>,
    /// Also emit the separating line set of this assignment, e.g. `101`.
    #[arg(long, conflicts_with = "extract")]
    pub assignment: Option<String>,
    /// Read a line set and print the assignment it encodes.
    #[arg(long, value_name = "LINES")]
    pub extract: Option<PathBuf>,
    /// Also write the line set of `--assignment` to this file.
    #[arg(long, requires = "assignment")]
    pub lines_out: Option<PathBuf>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    /// Layout (with sizes), point set, or gadget file.
    pub input: PathBuf,
    #[arg(short, long)]
    pub output: PathBuf,
    /// Lines to draw on top.
    #[arg(long)]
    pub lines: Option<PathBuf>,
}
