//! File formats, multithreaded operator and command implementations for the
//! `paperrank` binary. The numerics live in `paperrank-core`.

pub mod cli;
pub mod commands;
pub mod error;
pub mod formats;
pub mod parallel;

pub use error::{CliError, Result};
