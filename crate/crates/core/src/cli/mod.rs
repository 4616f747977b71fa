//! Instance specifications, the default corpus, verification suites and the
//! inspection commands behind the `eigenring` binary.

mod commands;
mod corpus;
mod report;
mod spec;
mod suites;

pub use commands::{check_ring, inspect_module, similarity_classes, CommandOutput};
pub use corpus::default_corpus;
pub use report::{CheckRecord, Outcome, Summary, VerificationReport};
pub use spec::{AlgebraSpec, FieldSpec, Instance, InstanceRef, InstanceSpec};
pub use suites::{build_corpus, run_suite, RunOptions, Suite};
