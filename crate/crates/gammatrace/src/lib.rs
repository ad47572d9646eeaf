//! Command-line front end for `gammatrace-core`: the coefficient cache,
//! output formats, benchmarks and subcommand dispatch.

pub mod bench;
pub mod cache;
pub mod cli;
pub mod emit;
