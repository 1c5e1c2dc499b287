use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    VerifyAlgebra,
    Perturb,
    Expect,
    Parse,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Md,
    Csv,
}

/// Every run parameter. Unset fields fall back to the defaults documented
/// on the accessors. The config file is flat TOML with these keys.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub command: Option<Command>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flavor: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hbar: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps3: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<i32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<i32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lmax: Option<i32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nodes: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scan: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expr: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
}

macro_rules! overlay {
    ($base:ident, $top:ident; $($f:ident),*) => {
        RunConfig { $($f: $top.$f.or($base.$f)),* }
    };
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(e.message().to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("flat config always serializes")
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    /// Fields set in `top` win.
    pub fn overlay(self, top: RunConfig) -> RunConfig {
        let base = self;
        overlay!(base, top; command, flavor, s, w, hbar, eps, eps1, eps2, eps3, lambda, m, k, lmax,
            nodes, coeffs, sigma, scan, pair, expr, out, format)
    }

    /// Default `1`.
    pub fn hbar(&self) -> f64 {
        self.hbar.unwrap_or(1.0)
    }

    /// Default `0.01`.
    pub fn eps(&self) -> f64 {
        self.eps.unwrap_or(0.01)
    }

    /// Defaults to `eps`.
    pub fn eps1(&self) -> f64 {
        self.eps1.unwrap_or(self.eps())
    }

    /// Defaults to `eps`.
    pub fn eps2(&self) -> f64 {
        self.eps2.unwrap_or(self.eps())
    }

    /// Default `0`.
    pub fn eps3(&self) -> f64 {
        self.eps3.unwrap_or(0.0)
    }

    /// Default `1`.
    pub fn lambda(&self) -> i32 {
        self.lambda.unwrap_or(1)
    }

    /// Default `0`.
    pub fn m(&self) -> i32 {
        self.m.unwrap_or(0)
    }

    /// Default `0`.
    pub fn k(&self) -> f64 {
        self.k.unwrap_or(0.0)
    }

    /// Default `λ + 3`.
    pub fn lmax(&self) -> i32 {
        self.lmax.unwrap_or(self.lambda() + 3)
    }

    /// Default `2 lmax + 8`.
    pub fn nodes(&self) -> usize {
        self.nodes.unwrap_or((2 * self.lmax().max(0) + 8) as usize)
    }

    /// Default `1`.
    pub fn sigma(&self) -> f64 {
        self.sigma.unwrap_or(1.0)
    }

    /// Default `eps1*x,eps2*y,eps3*z`.
    pub fn s(&self) -> &str {
        self.s.as_deref().unwrap_or("eps1*x,eps2*y,eps3*z")
    }

    /// Default empty (zero).
    pub fn w(&self) -> &str {
        self.w.as_deref().unwrap_or("")
    }

    /// Default `complex`.
    pub fn flavor(&self) -> &str {
        self.flavor.as_deref().unwrap_or("complex")
    }

    /// Default `ell2_plus`.
    pub fn pair(&self) -> &str {
        self.pair.as_deref().unwrap_or("ell2_plus")
    }

    /// Default per command: Markdown for `verify-algebra` and `parse`, CSV
    /// for `perturb`, JSON for `expect`.
    pub fn format(&self, command: Command) -> Format {
        self.format.unwrap_or(match command {
            Command::VerifyAlgebra | Command::Parse => Format::Md,
            Command::Perturb => Format::Csv,
            Command::Expect => Format::Json,
        })
    }
}
