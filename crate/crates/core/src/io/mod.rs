//! Ingestion, synthetic data, and report emission.

pub mod config;
pub mod csv;
pub mod report;
pub mod svg;
pub mod synth;

pub use config::RunConfig;
pub use csv::{load_csv, parse_csv, write_csv};
pub use synth::{generate_synthetic, SyntheticKind};
