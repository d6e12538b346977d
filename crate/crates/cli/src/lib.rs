//! Job-spec driven front end for the exact L-function verifier: parse a JSON
//! description of covers, sheaves, tori and one-motives, run the requested
//! computations, and emit deterministic reports.
//!
//! [jobspec] [ops] [report]

pub mod jobspec;
pub mod ops;
pub mod report;

pub use jobspec::{build_job, parse_jobspec, BuiltJob, JobSpec, SpecError};
pub use ops::{error_code, ono_table, run_command, run_job};
pub use report::{canonical_json, emit, CommandResult, Format, Report};
