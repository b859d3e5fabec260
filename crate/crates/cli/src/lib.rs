//! Field specs, verification reports and the subcommands of the `nrhw`
//! binary.

pub mod commands;
pub mod report;
pub mod spec;

pub use commands::Suite;
pub use report::{FieldSummary, PrimeRecord, Report, SuiteCounts, Verdict};
pub use spec::{FieldSpecFile, SpecError};
