//! Worked-example registry, randomized verification, matrix files, reports
//! and the command-line front end.

pub mod cli;
pub mod io;
pub mod registry;
pub mod report;
pub mod suite;

pub use io::{load_matrices, matrices_to_json, parse_matrices, save_matrices, NamedMatrices};
pub use registry::{
    worked_examples, run_paper_checks, Expectation, ExpectationStatus, PaperCheckReport, PaperCheckRow, WorkedExample,
    Verdict,
};
pub use report::{fmt_num, render, ReportFormat, Table};
pub use suite::{draw_trial, run_random_suite, BoundSummary, NearMiss, SuiteConfig, SuiteReport, Trial};
