//! Experiment driver: TOML configs, sweeps over `m`, per-run CSV records and
//! their summaries.

pub mod config;
pub mod diagnostics;
pub mod experiment;
pub mod records;

pub use config::{ExperimentConfig, Scheme, Tau1Rule};
pub use experiment::{run_experiment, Prepared, RunFailure, SweepOutput};
pub use records::{aggregate, read_records, write_records, write_summary, Stats, SummaryRow, SweepRecord};
