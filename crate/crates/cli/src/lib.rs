//! Command implementations and file formats behind the `nfl` binary.
//!
//! Every command returns its complete output as a string so that the binary,
//! the tests and any other caller see exactly the same bytes.

pub mod commands;
pub mod error;
pub mod format;

pub use error::CliError;
