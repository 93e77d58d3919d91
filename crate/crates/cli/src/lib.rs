//! Command-line harness around `monoq-core`: state files, single-state
//! evaluation, figure data and falsification campaigns.

pub mod campaign;
pub mod config;
pub mod error;
pub mod eval;
pub mod fmt;
pub mod reproduce;
pub mod statefile;

pub use error::{CliError, CliResult};
