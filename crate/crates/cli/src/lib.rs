//! IO, file formats and the parallel scan driver behind the `quintic-bg`
//! command-line tool.

pub mod config;
pub mod json;
pub mod plot;
pub mod scan_io;
