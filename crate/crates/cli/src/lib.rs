//! Experiment pipeline behind the `spectral-sens` binary: datasets, the
//! subcommands, CSV and SVG output.

pub mod commands;
pub mod dataset;
pub mod error;
pub mod output;
pub mod stats;
pub mod svg;

pub use commands::{AlgoChoice, RunConfig};
pub use dataset::{Dataset, DatasetSpec, SbmGrid};
pub use error::{CliError, Result};
pub use output::{Format, Output};
