//! Command-line front end for the accelerated-oscillator field
//! computations: configuration, parallel grid sweeps, verification
//! commands and CSV / JSON output.

pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;

pub use error::{CliError, Result};
