//! Command-line front end: instance documents, solver dispatch and JSON reports.

mod commands;
pub mod document;
mod report;
mod selftest;

pub use commands::{parse_graph, run, CAP_ENV, EXIT_BUDGET, EXIT_INFEASIBLE, EXIT_OK, EXIT_USAGE};
