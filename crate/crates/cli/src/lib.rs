//! Library half of the `kedp` command-line tool.

pub mod app;
pub mod experiment;
pub mod report;
