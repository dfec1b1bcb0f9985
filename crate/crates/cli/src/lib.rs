//! Configuration, sweeps and output for the `sqfluor` command-line tool.

pub mod commands;
pub mod config;
pub mod selftest;
pub mod sweep;
pub mod table;
pub mod units;

pub use config::{load_config, parse_config, ConfigError, RunConfig};
pub use table::{Cell, Table};
