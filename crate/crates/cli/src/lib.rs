//! Library half of the `bohr` binary: reference-table data, configuration,
//! and the subcommand implementations, exposed so the integration and
//! acceptance tests can call them in-process.

pub mod commands;
pub mod config;
pub mod tables;
pub mod verify;
