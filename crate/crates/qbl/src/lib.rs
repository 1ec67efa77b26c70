//! Spec files, report formats and the `qbl` command line on top of `qbl-core`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod commands;
pub mod emit;
mod error;
pub mod parallel;
pub mod parse;
pub mod spec;

pub use commands::{run, Outcome};
pub use error::{CliError, Result};
