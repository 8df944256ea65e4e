//! Command-line front end: a JSON job document in, a rendered report out.

pub mod dispatch;
pub mod job;

pub use dispatch::{render_report, run, CliError, Report, Status};
pub use job::{parse_field, parse_input, Command, Format, JobError, JobSpec};
