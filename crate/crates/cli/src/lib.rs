//! Command-line front end.

mod args;
pub mod commands;
pub mod config;
pub mod parse;

pub use args::{execute, Invocation};
pub use commands::{run, CliError, Command, Output, Status};
pub use config::{Format, SessionConfig};
pub use parse::{parse_presentation, parse_relaxed, ParseError};
