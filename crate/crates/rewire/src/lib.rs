//! File formats, reports and the command-line driver on top of `rewire-core`.

pub mod commands;
pub mod files;
pub mod parallel;
pub mod report;

pub use files::{load_code, parse_code, parse_schedule, save_code, save_schedule, FileError};
pub use report::Report;
