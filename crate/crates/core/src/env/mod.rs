//! Synthetic ground-truth world: reward models with known Lipschitz
//! constants, context arrival processes, Bernoulli reward realization,
//! the priced annotator, and brute-force oracles for instrumentation.

mod annotator;
mod context;
mod reward;
mod table;

pub use annotator::{Annotator, PriorInfo};
pub use context::{ContextProcess, ProcessKind};
pub use reward::RewardModel;
pub use table::GridTable;

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum EnvError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("table parse error at line {line}: {message}")]
    TableParse { line: usize, message: String },
    #[error("table value {value} outside [0,1]")]
    TableValueOutOfRange { value: f64 },
    #[error(
        "table Lipschitz audit failed on the {axis} axes: observed {observed}, declared {declared}"
    )]
    TableLipschitzAudit {
        axis: &'static str,
        observed: f64,
        declared: f64,
    },
}
