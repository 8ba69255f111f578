//! Commands behind the `evograph` binary.
//!
//! Each `cmd_*` function is pure given its inputs and returns a serializable
//! value; `main.rs` only parses flags, loads files, renders and writes.

pub mod angle;
pub mod commands;
pub mod error;
pub mod record;
pub mod render;
pub mod reproduce;

pub use commands::*;
pub use error::{CliError, ErrorKind};
pub use record::RunRecord;
pub use reproduce::{cmd_reproduce, Case, ReproduceReport, ReproduceRow};
