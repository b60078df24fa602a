//! Batch front end for `fihom-core`: job files, reports, a result cache and
//! the built-in acceptance corpus.

pub mod build;
pub mod report;
pub mod run;
pub mod spec;
pub mod suite;

pub use run::{run_job, JobReport, RunOptions, EXIT_FAIL, EXIT_INVALID, EXIT_OK, EXIT_WINDOW};
pub use spec::{parse_spec, print_spec, FieldChoice, JobSpec, SpecErrors, TaskKind};
