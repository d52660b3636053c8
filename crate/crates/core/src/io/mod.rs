//! Text input, problem files, task execution and reports.

pub mod parse;
pub mod problem;
pub mod report;
pub mod run;

pub use parse::{parse_family_polynomial, parse_polynomial, ParsedPolynomial};
pub use problem::{parse_problem, ProblemFile, TaskKind, TaskSpec, VarietySpec};
pub use report::{Report, ResultLine, ResultValue, TaskOutcome};
pub use run::{parse_rational, run_job, run_jobs, run_problem, Context, Job};
