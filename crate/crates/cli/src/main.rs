//! `gapbound`: reproduce and explore the limitation constants of the
//! Montgomery–Odlyzko method.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gapbound_core::{BoundConfig, Error, LargeGapVariant, QuadratureSpec};

use output::Format;

#[derive(Debug, Parser)]
#[command(name = "gapbound", version, about = "Limits of the Montgomery-Odlyzko method for zeta-zero gaps")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,

    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    json: bool,

    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(flatten)]
    tolerances: Tolerances,
}

/// Numerical tolerances; each may also be set through the environment.
#[derive(Debug, Clone, Args)]
pub struct Tolerances {
    /// Bisection width for the critical c.
    #[arg(long, global = true, env = "GAPBOUND_TOL_C", default_value_t = 1e-5)]
    pub tol_c: f64,

    /// Bisection width for the critical point phi0.
    #[arg(long, global = true, env = "GAPBOUND_TOL_PHI", default_value_t = 1e-12)]
    pub tol_phi: f64,

    /// Resolution of the reported beta (lattice spacing).
    #[arg(long, global = true, env = "GAPBOUND_TOL_BETA", default_value_t = 1e-3)]
    pub tol_beta: f64,

    /// Absolute tolerance of every quadrature.
    #[arg(long, global = true, env = "GAPBOUND_TOL_QUAD", default_value_t = 1e-12)]
    pub tol_quad: f64,

    /// Bisection width for the large-gap thresholds.
    #[arg(long, global = true, env = "GAPBOUND_TOL_THRESHOLD", default_value_t = 1e-8)]
    pub tol_threshold: f64,

    /// Coarse beta grid size for the optimizer.
    #[arg(long, global = true, env = "GAPBOUND_BETA_GRID", default_value_t = 201)]
    pub beta_grid: usize,
}

impl Tolerances {
    fn validate(&self) -> Result<(), String> {
        for (name, v) in [
            ("--tol-c", self.tol_c),
            ("--tol-phi", self.tol_phi),
            ("--tol-beta", self.tol_beta),
            ("--tol-quad", self.tol_quad),
            ("--tol-threshold", self.tol_threshold),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(format!("{name} must be positive, got {v}"));
            }
        }
        if self.beta_grid < 2 {
            return Err(format!("--beta-grid must be at least 2, got {}", self.beta_grid));
        }
        Ok(())
    }

    pub fn quad(&self) -> QuadratureSpec {
        QuadratureSpec { abs_tol: self.tol_quad, ..QuadratureSpec::default() }
    }

    pub fn bound_config(&self) -> BoundConfig {
        BoundConfig {
            quad: self.quad(),
            phi_tol: self.tol_phi,
            beta_grid: self.beta_grid,
            beta_tol: self.tol_beta,
            ..BoundConfig::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    V1,
    V2,
    Both,
}

impl VariantArg {
    fn variants(self) -> Vec<LargeGapVariant> {
        match self {
            VariantArg::V1 => vec![LargeGapVariant::V1],
            VariantArg::V2 => vec![LargeGapVariant::V2],
            VariantArg::Both => vec![LargeGapVariant::V1, LargeGapVariant::V2],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    Ones,
    B1Only,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Bisect for the largest c with min over beta of h_upper(c, beta) < 1.
    CriticalC {
        #[arg(long, default_value_t = 0.5)]
        c_lo: f64,
        #[arg(long, default_value_t = 0.52)]
        c_hi: f64,
    },
    /// Tabulate the bound over a grid of beta values at fixed c.
    Scan {
        #[arg(long)]
        c: f64,
        #[arg(long, default_value_t = 0.3)]
        beta_min: f64,
        #[arg(long, default_value_t = 0.5)]
        beta_max: f64,
        #[arg(long, default_value_t = 50)]
        steps: usize,
    },
    /// Certify c + G(phi) < 1 on a dense phi grid.
    Verify {
        #[arg(long)]
        c: f64,
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = 100_000)]
        grid: usize,
        #[arg(long, default_value_t = 0.0)]
        delta: f64,
    },
    /// Thresholds beyond which the large-gap lower bounds exceed 1.
    LargeGaps {
        #[arg(long, value_enum, default_value_t = VariantArg::Both)]
        variant: VariantArg,
        /// Root bracket; defaults to [4, 7] for v1 and [3, 5] for v2.
        #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
        bracket: Option<Vec<f64>>,
    },
    /// Direct prime-power sums at T = 10^t_exp audited against the bound chain.
    Oracle {
        #[arg(long, default_value_t = 4)]
        t_exp: u32,
        #[arg(long, default_value_t = 0.5042)]
        c: f64,
        #[arg(long, value_enum, default_value_t = SchemeArg::Ones)]
        scheme: SchemeArg,
        #[arg(long, default_value_t = 0.0)]
        delta: f64,
        /// AM-GM weights beta to audit (alpha = 1/(4 beta)).
        #[arg(long, num_args = 1.., default_values_t = [0.5, 0.476])]
        beta: Vec<f64>,
        /// Load the sieve from this cache file, creating it if absent.
        #[arg(long)]
        sieve_cache: Option<PathBuf>,
    },
    /// Recompute every published constant and compare.
    Reproduce,
}

pub enum Failure {
    Usage(String),
    Numerical(String),
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        match err {
            Error::Domain(_) => Failure::Usage(err.to_string()),
            other => Failure::Numerical(other.to_string()),
        }
    }
}

fn run(cli: &Cli) -> Result<output::Report, Failure> {
    cli.tolerances.validate().map_err(Failure::Usage)?;
    let tol = &cli.tolerances;
    match &cli.command {
        Command::CriticalC { c_lo, c_hi } => commands::critical_c((*c_lo, *c_hi), tol),
        Command::Scan { c, beta_min, beta_max, steps } => {
            commands::scan(*c, *beta_min, *beta_max, *steps, tol)
        }
        Command::Verify { c, beta, grid, delta } => commands::verify(*c, *beta, *delta, *grid, tol),
        Command::LargeGaps { variant, bracket } => {
            let bracket = bracket.as_ref().map(|b| (b[0], b[1]));
            commands::large_gaps(&variant.variants(), bracket, tol)
        }
        Command::Oracle { t_exp, c, scheme, delta, beta, sieve_cache } => {
            commands::oracle(*t_exp, *c, *scheme, *delta, beta, sieve_cache.as_deref(), tol)
        }
        Command::Reproduce => commands::reproduce(tol),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = if cli.json { Format::Json } else { cli.format };
    match run(&cli) {
        Ok(report) => {
            let text = report.render(format);
            match &cli.out {
                Some(path) => {
                    if let Err(err) = std::fs::write(path, text) {
                        eprintln!("error: cannot write {}: {err}", path.display());
                        return ExitCode::from(1);
                    }
                }
                None => print!("{text}"),
            }
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Numerical(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
