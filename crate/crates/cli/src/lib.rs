//! Scenario loading, command dispatch and reporting for the `gauge` binary.

pub mod commands;
pub mod report;
pub mod scenario;

pub use report::{Record, Report, Status};
pub use scenario::Scenario;
