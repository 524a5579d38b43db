//! Verification harness and command implementations behind the `torelli`
//! binary.
//!
//! Every command returns a value that renders both as text and as JSON, so
//! the binary is a thin argument parser and the behaviour is testable
//! in-process. Exit statuses: 0 success, 1 failed check, 2 usage or parse
//! error, 3 resource guard, 4 domain error.

pub mod commands;
pub mod document;
mod error;
pub mod report;
pub mod suites;

pub use commands::{cycle, decompose, dims, CycleSummary, DecomposeOutput, Pipeline};
pub use document::{ConfigDocument, PairDocument};
pub use error::CliError;
pub use report::{Check, Status, VerificationReport};
pub use suites::{run_suite, Suite, SuiteOptions};
