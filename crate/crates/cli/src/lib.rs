//! Library surface of the `qlab` command-line tool: the command
//! implementations, their exit-code contract, and the JSON file schemas.
//! The binary in `main.rs` is a thin argument-parsing shell over this.

pub mod commands;
pub mod files;
