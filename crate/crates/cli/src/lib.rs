//! Configuration, figure presets and CSV output for the `ptdd` binary.

pub mod commands;
pub mod config;
pub mod error;
pub mod presets;
pub mod table;

pub use error::{CliError, CliResult};
