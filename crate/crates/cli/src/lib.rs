//! Command-line front end for the MSAR planning toolkit: config loading,
//! validation and the five subcommands (`pod-curve`, `drift`,
//! `optimal-altitude`, `evaluate`, `compare`).

// Validation intentionally writes `!(x > 0.0)` so NaN fails the check too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;

use thiserror::Error;

pub use commands::{
    cmd_compare, cmd_drift, cmd_evaluate, cmd_optimal_altitude, cmd_pod_curve, CompareRow,
    DriftSummary, EvaluateReport, OptimalAltitudeReport, Overrides,
};
pub use config::{AltitudeSpec, ResolvedMission, SpacingSpec, ToolConfig};

/// Exit code for configuration problems.
pub const EXIT_CONFIG_ERROR: i32 = 1;
/// Exit code when the mission evaluates but violates a constraint.
pub const EXIT_CONSTRAINT_VIOLATION: i32 = 2;
/// Exit code for I/O problems.
pub const EXIT_IO_ERROR: i32 = 3;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("I/O error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG_ERROR,
            CliError::Io(_) => EXIT_IO_ERROR,
        }
    }
}
