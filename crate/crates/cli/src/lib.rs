//! File formats, command dispatch and certificate rendering for the `relaus`
//! command line tool.

pub mod commands;
pub mod format;
pub mod markdown;

pub use commands::{run, Command, Mode, Options, Outcome, Status};
