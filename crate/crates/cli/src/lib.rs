//! Report-producing commands behind the `fibcheck` binary.

pub mod commands;
pub mod report;

pub use commands::UsageError;
pub use report::{Record, Report, Status};
