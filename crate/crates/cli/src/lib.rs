//! Command-line front end for `perflat`: argument parsing, Gram files,
//! TSV/JSON tables and the batch pipelines behind each subcommand.

pub mod args;
pub mod commands;
pub mod error;
pub mod gramfile;
pub mod output;
pub mod scramble;

pub use error::{CliError, Result};
