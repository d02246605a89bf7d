//! Reading detector output and commit logs, writing graph dumps, reports
//! and DOT files, and the `refgraph` command line.
//!
//! The graph model and all measurements live in [`refgraph_core`].

pub mod cli;
pub mod commit_log;
pub mod dump;
pub mod error;
pub mod output;
pub mod pipeline;
pub mod records;

pub use error::{Error, ExitCode, Result};
