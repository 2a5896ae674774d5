//! File formats, subcommands and benchmarks behind the `ancestry` tool.

pub mod bench;
pub mod commands;
pub mod formats;
