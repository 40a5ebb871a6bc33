use std::fmt;

use clap::ValueEnum;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
            OutputFormat::Text => "text",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("precision must be at least 64 bits, got {0}")]
    PrecisionTooLow(usize),
    #[error("tolerance must lie in (0, 0.5), got {0}")]
    BadTolerance(f64),
}

/// Settings shared by every subcommand.
#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub precision_bits: usize,
    pub integrality_tolerance: f64,
    /// `None` lets each subcommand use its natural format.
    pub output_format: Option<OutputFormat>,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            precision_bits: 128,
            integrality_tolerance: 1e-6,
            output_format: None,
            seed: 0,
        }
    }
}

impl Config {
    pub fn validate(self) -> Result<Self, ConfigError> {
        if self.precision_bits < 64 {
            return Err(ConfigError::PrecisionTooLow(self.precision_bits));
        }
        let t = self.integrality_tolerance;
        if !(t > 0.0 && t < 0.5) {
            return Err(ConfigError::BadTolerance(t));
        }
        Ok(self)
    }
}
