//! Library surface of the command-line tool: catalog ingestion and report
//! documents. The binary in `main.rs` wires these to the subcommands.

pub mod catalog;
pub mod report;
