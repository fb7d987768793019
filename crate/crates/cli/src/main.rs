//! `mvsurf`: batch front end for the kernel, zero-hunt, quadrature, Green
//! function and surface routines.

mod checks;
mod hunt;
mod kernel;
mod output;
mod parse;
mod surface;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use mvsurf::hp::Precision;
use mvsurf::surface::GridSpec;
use serde::Serialize;

use output::{emit, Format, Report};

#[derive(Debug, Parser, Serialize)]
#[command(name = "mvsurf", version, about = "Weighted Bergman kernels, extraneous zeros and mean value surfaces")]
struct Cli {
    /// Working precision in significant decimal digits.
    #[arg(long, global = true, env = "MVSURF_DIGITS", default_value_t = 40)]
    digits: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    out: Format,
    /// Grid resolution `MxN` for grid-based subcommands.
    #[arg(long, global = true)]
    grid: Option<String>,
    /// Seed for randomized property sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Allow table rows with more than 78 points.
    #[arg(long, global = true)]
    long_running: bool,
    /// Write the artifact here (manifest at `<path>.manifest.json`) instead of stdout.
    #[arg(long, short = 'o', global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
enum Command {
    /// Evaluate kernels at given points.
    Kernel(kernel::KernelArgs),
    /// Boundary value scan and zero location for one configuration.
    Zerohunt(hunt::HuntArgs),
    /// Reproduce rows of the reference parameter table.
    Table1(hunt::Table1Args),
    /// K_A(1, 0) over a range of alpha, or over a (theta, d) grid.
    Sweep(hunt::SweepArgs),
    /// |K_A(z, 0)| on a rectangular window, for contour plots.
    Levelgrid(hunt::LevelArgs),
    /// Mean value property battery for a weight.
    Mvp(checks::MvpArgs),
    /// Green functions: evaluation, bounds, property sweeps and grids.
    Green(checks::GreenArgs),
    /// Curvature, weights and metric potential pipelines.
    Surface(surface::SurfaceArgs),
    /// Closed forms for the one-point power weight.
    Toy(kernel::ToyArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Kernel(_) => "kernel",
            Command::Zerohunt(_) => "zerohunt",
            Command::Table1(_) => "table1",
            Command::Sweep(_) => "sweep",
            Command::Levelgrid(_) => "levelgrid",
            Command::Mvp(_) => "mvp",
            Command::Green(_) => "green",
            Command::Surface(_) => "surface",
            Command::Toy(_) => "toy",
        }
    }
}

/// Resolved global options shared by the subcommands.
pub struct Env {
    pub ctx: Precision,
    pub grid: Option<GridSpec>,
    pub seed: u64,
    pub long_running: bool,
}

/// Failure classes mapped to exit codes.
pub enum Failure {
    Usage(String),
    Numerical(String),
}

impl From<mvsurf::Error> for Failure {
    fn from(e: mvsurf::Error) -> Failure {
        if e.is_numerical() {
            Failure::Numerical(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

pub type CmdResult = Result<Report, Failure>;

fn run(cli: &Cli, env: &Env) -> CmdResult {
    match &cli.command {
        Command::Kernel(a) => kernel::kernel(env, a),
        Command::Zerohunt(a) => hunt::zerohunt(env, a),
        Command::Table1(a) => hunt::table1(env, a),
        Command::Sweep(a) => hunt::sweep(env, a),
        Command::Levelgrid(a) => hunt::levelgrid(env, a),
        Command::Mvp(a) => checks::mvp(env, a),
        Command::Green(a) => checks::green(env, a),
        Command::Surface(a) => surface::surface(env, a),
        Command::Toy(a) => kernel::toy(env, a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let started = Instant::now();
    let env = match resolve(&cli) {
        Ok(env) => env,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    match run(&cli, &env) {
        Ok(report) => {
            let params = serde_json::to_value(&cli).unwrap_or_default();
            if let Err(e) = emit(cli.command.name(), params, cli.digits, cli.out, cli.output.as_deref(), &report, started) {
                eprintln!("error: writing output: {e}");
                return ExitCode::from(1);
            }
            if report.passed == Some(false) {
                eprintln!("error: acceptance checks failed");
                return ExitCode::from(3);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Numerical(msg)) => {
            eprintln!("numerical failure: {msg}");
            ExitCode::from(2)
        }
    }
}

fn resolve(cli: &Cli) -> Result<Env, String> {
    let ctx = Precision::new(cli.digits).map_err(|e| e.to_string())?;
    let grid = cli.grid.as_deref().map(GridSpec::parse).transpose().map_err(|e| e.to_string())?;
    Ok(Env {
        ctx,
        grid,
        seed: cli.seed,
        long_running: cli.long_running,
    })
}
