//! Problem files and subcommands for the `conley` executable.

pub mod commands;
pub mod dot;
pub mod problem;

pub use commands::{CliError, Outcome};
pub use problem::{Problem, ProblemError};
