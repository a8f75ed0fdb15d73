//! The `qkp` command line: argument grammar, the echoed run configuration,
//! and the subcommands that drive every library crate.

pub mod cli;
pub mod config;
pub mod run;

pub use cli::Cli;
pub use config::RunConfig;
pub use run::{run, CliError, Output};
