//! Design-file driven front end: participation tables, solver checks,
//! parameter sweeps, taper optimisation and TLS spectra.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod report;

pub use commands::{CliError, Output};
pub use config::{ConfigError, DesignConfig, RawConfig};
pub use report::{Cell, Format, Table};
