use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod report;

use report::Output;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] heis_slor::Error),
    #[error("{0}")]
    Usage(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot encode JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(heis_slor::Error::InvalidArgument(_)) | CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "heis-slor",
    version,
    about = "Sub-Lorentzian geometry of the Heisenberg group"
)]
struct Cli {
    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the result to a file instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

/// Two events `p = (px, py, pz)` and `q = (qx, qy, qz)`.
#[derive(Debug, Clone, Copy, Args)]
pub struct Pair {
    px: f64,
    py: f64,
    pz: f64,
    qx: f64,
    qy: f64,
    qz: f64,
}

impl Pair {
    fn events(&self) -> (heis_slor::Event, heis_slor::Event) {
        (
            heis_slor::Event::new(self.px, self.py, self.pz),
            heis_slor::Event::new(self.qx, self.qy, self.qz),
        )
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Maximize Lorentzian length from (0,0) to (a,b) with enclosed area c.
    #[command(allow_negative_numbers = true)]
    IsoSolve {
        a: f64,
        b: f64,
        c: f64,
        /// Number of curve samples to include.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Time separation τ(p, q).
    #[command(allow_negative_numbers = true)]
    Tau {
        #[command(flatten)]
        pair: Pair,
    },
    /// Maximizing geodesic from p to q, sampled as t,x,y,z.
    #[command(allow_negative_numbers = true)]
    Geodesic {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value_t = 101)]
        samples: usize,
    },
    /// Lebesgue volume of the causal diamond J(p, q).
    #[command(allow_negative_numbers = true)]
    DiamondVolume {
        #[command(flatten)]
        pair: Pair,
        /// Monte Carlo sample count; omitted means closed form only.
        #[arg(long)]
        mc: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Hausdorff pre-measure bounds and the dimension probe for a ball.
    #[command(allow_negative_numbers = true)]
    Hausdorff {
        #[arg(long, num_args = 3, value_names = ["X", "Y", "Z"], default_values_t = [0.0, 0.0, 0.0])]
        center: Vec<f64>,
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        #[arg(long, default_value_t = 0.1)]
        delta: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Sample J(p, q) and test it against the ball-box inclusions.
    #[command(allow_negative_numbers = true)]
    DiamondBox {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Midpoint determinant, TMCP witnesses and the unit-diamond decay scan.
    #[command(allow_negative_numbers = true)]
    CurvatureCheck {
        /// Interpolation time in (0, 1); omitted means 0.25, 0.5 and 0.75.
        #[arg(long)]
        t: Option<f64>,
        /// Dimension parameter N ≥ 1; omitted means 1, 2, 5 and 10.
        #[arg(long = "N")]
        n: Option<f64>,
        /// Largest |w| searched for a TMCP witness.
        #[arg(long, default_value_t = 200.0)]
        wmax: f64,
        /// Finite-difference step for the determinants.
        #[arg(long, default_value_t = 1e-5)]
        step: f64,
    },
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("HEIS_SLOR_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("HEIS_SLOR_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    let format = cli.format;
    let output: Output = match cli.command {
        Command::IsoSolve { a, b, c, samples } => commands::iso_solve(a, b, c, samples, format)?,
        Command::Tau { pair } => commands::tau(pair.events(), format)?,
        Command::Geodesic { pair, samples } => commands::geodesic(pair.events(), samples, format)?,
        Command::DiamondVolume { pair, mc, seed } => commands::diamond_volume(pair.events(), mc, seed, format)?,
        Command::Hausdorff {
            center,
            radius,
            delta,
            seed,
        } => {
            let center = heis_slor::Event::new(center[0], center[1], center[2]);
            commands::hausdorff(center, radius, delta, seed, format)?
        }
        Command::DiamondBox { pair, samples, seed } => commands::diamond_box(pair.events(), samples, seed, format)?,
        Command::CurvatureCheck { t, n, wmax, step } => commands::curvature_check(t, n, wmax, step, format)?,
    };
    let text = output.render()?;
    match cli.output {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
