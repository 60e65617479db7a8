//! Error type shared across the library.

use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Dimensions of an argument do not match the structure it is used with.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// A scalar or configuration value is outside its admissible range.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// A scenario cannot be turned into an objective.
    #[error("cannot build objective: {0}")]
    Build(String),

    /// A detection id, state index, or label is not valid for the scenario.
    #[error("invalid index: {0}")]
    Index(String),

    /// The gradient produced a NaN or infinity for the named vertex block.
    #[error("non-finite gradient for vertex {vertex}")]
    NonFiniteGradient { vertex: usize },

    /// Exhaustive enumeration was refused.
    #[error("{count} labeling configurations exceed the brute-force cap of {cap}")]
    BruteForceCapExceeded { count: u128, cap: u64 },

    /// The joint lattice is too large for exact dynamic programming.
    #[error(
        "joint lattice has {rows} rows in frame {frame}, exceeding the cap of {cap} \
         (estimated {comparisons} lattice comparisons)"
    )]
    JointLatticeTooLarge {
        rows: u128,
        frame: usize,
        cap: u64,
        comparisons: BigUint,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
