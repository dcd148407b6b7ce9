//! Flat key/value config file and the resolved per-command settings.
//!
//! Precedence is flag > config file > built-in default.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use spike_tyke::PhysicalConstants;

use crate::error::{CliError, CliResult};

/// Output file format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    Json,
    Svg,
}

/// Named constant sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum ConstantSet {
    /// h = 6.6261e-34, c = 2.9979e8, k = 1.3807e-23
    Listing,
    /// h = 6.626e-34, c = 3e8, k = 1.38e-23
    Prose,
}

/// Every key a config file may set. Keys a command does not use are ignored.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub temperatures: Option<Vec<f64>>,
    pub lambda_start: Option<f64>,
    pub lambda_step: Option<f64>,
    pub count: Option<usize>,
    pub variant: Option<String>,
    pub area: Option<f64>,
    pub current: Option<f64>,
    pub charge: Option<f64>,
    pub n_min: Option<u64>,
    pub n_max: Option<u64>,
    pub pairs: Option<PathBuf>,
    pub mu: Option<f64>,
    pub tau_d: Option<f64>,
    pub w0: Option<f64>,
    pub t0: Option<f64>,
    pub t_max: Option<f64>,
    pub dt: Option<f64>,
    pub tolerance: Option<f64>,
    pub threshold: Option<f64>,
    pub reference: Option<String>,
    pub output: Option<PathBuf>,
    pub format: Option<Format>,
    pub constants: Option<ConstantSet>,
    pub h: Option<f64>,
    pub c: Option<f64>,
    pub k: Option<f64>,
    pub e_charge: Option<f64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text)
            .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
    }

    pub fn parse(text: &str) -> Result<Self, toml::de::Error> {
        toml::from_str(text)
    }

    pub fn resolve_constants(&self, flag: Option<ConstantSet>) -> CliResult<PhysicalConstants> {
        let base = match flag.or(self.constants).unwrap_or(ConstantSet::Listing) {
            ConstantSet::Listing => PhysicalConstants::LISTING,
            ConstantSet::Prose => PhysicalConstants::PROSE,
        };
        Ok(PhysicalConstants::new(
            self.h.unwrap_or(base.h),
            self.c.unwrap_or(base.c),
            self.k.unwrap_or(base.k),
            self.e_charge.unwrap_or(base.e_charge),
        )?)
    }
}

pub fn resolve<T>(flag: Option<T>, file: Option<T>, default: T) -> T {
    flag.or(file).unwrap_or(default)
}

pub fn require<T>(flag: Option<T>, file: Option<T>, name: &str) -> CliResult<T> {
    flag.or(file).ok_or_else(|| {
        CliError::Validation(format!(
            "missing required setting `{name}` (pass --{} or set it in the config file)",
            name.replace('_', "-")
        ))
    })
}
