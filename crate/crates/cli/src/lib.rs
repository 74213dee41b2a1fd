//! Command-line front end for `plv-core`.

pub mod commands;
pub mod config;
pub mod error;
pub mod io;

pub use error::{CliError, CliResult, Reason};
