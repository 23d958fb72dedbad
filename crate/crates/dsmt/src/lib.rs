//! File formats, reports and the command-line front end for `dsmt-core`.

pub mod bba_file;
pub mod cli;
pub mod report;
