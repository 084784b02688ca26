//! File formats, rendering and the command-line front end for `pants-core`.

pub mod commands;
pub mod error;
pub mod format;
pub mod random;
pub mod render;

pub use error::{CliError, Result};
