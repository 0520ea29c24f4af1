//! Sweep driver behind the `kerr-optomech` binary.

pub mod output;
pub mod recipes;
pub mod selftest;
pub mod sweep;

pub use output::RecordWriter;
pub use recipes::{Figure, Recipe, ReservoirCurve, DEFAULT_RESOLUTION, RESERVOIR_CURVES};
pub use sweep::{run_recipe, run_sweep, SweepError, SweepSummary};
