use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use thiserror::Error;

mod commands;
mod config;

use config::{Command, Format, RunConfig};

/// Exact verification of deformed angular-momentum algebras, the
/// first-order angular perturbation solver and real-bracket expectations.
#[derive(Parser, Debug)]
#[command(name = "qangmom", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Run the identity suite on a deformation spec.
    VerifyAlgebra,
    /// Solve the first-order angular perturbation problem.
    Perturb,
    /// Expectation checks and ε scans on a separable state.
    Expect,
    /// Parse an operator expression and print its canonical form.
    Parse { expr: Option<String> },
}

#[derive(clap::Args, Debug)]
struct Flags {
    /// complex, quat_left or quat_right.
    #[arg(long, global = true)]
    flavor: Option<String>,
    /// Comma-separated components of s.
    #[arg(long, global = true, allow_hyphen_values = true)]
    s: Option<String>,
    /// Comma-separated components of w.
    #[arg(long, global = true, allow_hyphen_values = true)]
    w: Option<String>,
    #[arg(long, global = true)]
    hbar: Option<f64>,
    #[arg(long, global = true)]
    eps: Option<f64>,
    #[arg(long, global = true)]
    eps1: Option<f64>,
    #[arg(long, global = true)]
    eps2: Option<f64>,
    #[arg(long, global = true)]
    eps3: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    lambda: Option<i32>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    m: Option<i32>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    k: Option<f64>,
    #[arg(long, global = true)]
    lmax: Option<i32>,
    /// Gauss–Legendre node count for the angular basis.
    #[arg(long, global = true)]
    nodes: Option<usize>,
    /// Angular coefficients over P_{|m|}^m, P_{|m|+1}^m, ...
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    coeffs: Option<Vec<f64>>,
    /// Radial envelope width.
    #[arg(long, global = true)]
    sigma: Option<f64>,
    /// Decreasing ε values for the commutator scan.
    #[arg(long, global = true, value_delimiter = ',')]
    scan: Option<Vec<f64>>,
    /// ell2_plus, ell2_minus or ell2_ell3.
    #[arg(long, global = true)]
    pair: Option<String>,
    /// Directory for report files.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Flat TOML config; its values override flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Print the effective config as TOML and exit.
    #[arg(long, global = true)]
    print_config: bool,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("{0}")]
    Usage(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Cli {
    fn into_config(self) -> Result<RunConfig, CliError> {
        let (command, expr) = match self.command {
            Cmd::VerifyAlgebra => (Command::VerifyAlgebra, None),
            Cmd::Perturb => (Command::Perturb, None),
            Cmd::Expect => (Command::Expect, None),
            Cmd::Parse { expr } => (Command::Parse, expr),
        };
        let f = self.flags;
        let from_flags = RunConfig {
            command: Some(command),
            flavor: f.flavor,
            s: f.s,
            w: f.w,
            hbar: f.hbar,
            eps: f.eps,
            eps1: f.eps1,
            eps2: f.eps2,
            eps3: f.eps3,
            lambda: f.lambda,
            m: f.m,
            k: f.k,
            lmax: f.lmax,
            nodes: f.nodes,
            coeffs: f.coeffs,
            sigma: f.sigma,
            scan: f.scan,
            pair: f.pair,
            expr,
            out: f.out,
            format: f.format,
        };
        let Some(path) = f.config else {
            return Ok(from_flags);
        };
        let file = RunConfig::load(&path)?;
        if file.command.is_some_and(|c| c != command) {
            return Err(CliError::Config(format!(
                "{} sets command {:?}, but {:?} was requested",
                path.display(),
                file.command.unwrap(),
                command
            )));
        }
        Ok(from_flags.overlay(file))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let print_config = cli.flags.print_config;
    let result = cli.into_config().and_then(|cfg| {
        if print_config {
            Ok(commands::Outcome { stdout: cfg.to_toml(), failure: None })
        } else {
            commands::run(&cfg)
        }
    });
    match result {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            if let Some(msg) = outcome.failure {
                eprintln!("verification failed: {msg}");
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
