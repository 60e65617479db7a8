//! Harness around the tracking library: scenario file I/O, synthetic
//! scenario generation, and the oracle-comparison study with its report
//! format. The `polytrack` binary is a thin layer over this crate.

pub mod compare;
pub mod generator;
pub mod report;
pub mod scenario_io;

use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error(transparent)]
    Invalid(#[from] polytrack::Error),

    #[error("relative error is undefined when the exact value is zero")]
    UndefinedRelativeError,

    #[error("invalid generator config: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, HarnessError>;

pub use compare::{compare_run, solve_single, CompareOptions, Solver, TrackReport};
pub use generator::{generate_scenario, generate_scenario_with_truth, GeneratorConfig};
pub use report::{relative_error, Aggregate, ScenarioFailure, ScenarioRecord, SolveReport, HISTOGRAM_BINS};
pub use scenario_io::{canonical_text, load_scenario, load_scenario_dir, parse_scenario};
