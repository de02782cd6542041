//! Output records of the `thue` command-line tool.

pub mod report;
