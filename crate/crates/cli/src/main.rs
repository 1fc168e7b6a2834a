//! `kwall`: walls, S-functions, beta-invariants and parameter maps for pairs on
//! F1 and BlP114.

mod commands;
mod config;
mod report;

use clap::{Args, CommandFactory, FromArgMatches, Parser, Subcommand};
use report::Format;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(
    name = "kwall",
    version,
    about = "Exact wall-crossing computations for degree-8 del Pezzo pairs"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Cmd,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "md")]
    pub format: Format,
    /// Add decimal columns with this many digits next to exact values.
    #[arg(long, global = true, value_name = "DIGITS")]
    pub approx: Option<usize>,
    /// Wall atlas to use instead of the bundled one.
    #[arg(long, global = true, env = "KWALL_ATLAS", value_name = "FILE")]
    pub atlas: Option<PathBuf>,
    /// File of `key = value` lines giving default flag values.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Enumerate and confirm the walls of a surface.
    Walls(commands::WallsArgs),
    /// S-invariant of a chart valuation: integration engine and closed form.
    Sfun(commands::SfunArgs),
    /// Zariski decomposition of a divisor class.
    Zariski(commands::ZariskiArgs),
    /// Beta-invariant of one valuation for a pair.
    Beta(commands::BetaArgs),
    /// Stability threshold of a torus-invariant pair.
    Threshold(commands::ThresholdArgs),
    /// Images of walls in the HKL and cone-construction parameters.
    #[command(subcommand)]
    Hkl(commands::HklCmd),
    /// Emit or check the wall atlas.
    Tables(commands::TablesArgs),
    /// Instability certificates.
    #[command(subcommand)]
    Certify(commands::CertifyCmd),
}

/// Exit status of a completed command.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    CheckFailed,
}

fn main() -> ExitCode {
    let root = Cli::command();
    let argv = match config::apply(&root, std::env::args().collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let cli = match root
        .try_get_matches_from(argv)
        .and_then(|m| Cli::from_arg_matches(&m))
    {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match commands::run(&cli, &mut out) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::CheckFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
