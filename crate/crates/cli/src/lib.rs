//! File IO, corpus sweeps and the `enumcode` command line on top of the
//! `enumcode` codec crate.

pub mod error;
pub mod input;
pub mod sweep;
pub mod tables;

pub use error::{CliError, Result};
