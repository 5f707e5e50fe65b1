//! Persistence-guided smoothing of 1D series.
//!
//! [`simplify`] removes low-persistence extrema pairs and rebuilds the series
//! with isotonic regression between the extrema that survive. The
//! [`filters`] module holds five conventional baselines, [`metrics`] the
//! residual norms, diagram distances and approximate entropy used to compare
//! them, and [`evaluate`] the entropy-calibrated ranking.

// `!(x > 0.0)` is used on purpose so that NaN fails parameter checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod evaluate;
pub mod filters;
pub mod io;
pub mod metrics;
pub mod persistence;
pub mod series;
pub mod simplify;

pub use error::{Error, Result};
pub use evaluate::{evaluate, EvalConfig, Evaluation, Method, Metric, RankReport};
pub use filters::FilterSpec;
pub use metrics::{approx_entropy, bottleneck, norm_l1, norm_linf, wasserstein1, DiagramPoint};
pub use persistence::{
    compute_persistence, diagram_of, BoundaryRule, ExtremaPair, MergeTree, PersistenceDiagram,
};
pub use series::{classify_extrema, validate, ExtremumKind, ExtremumRecord, TimeSeries};
pub use simplify::{isotonic_fit, select_pairs, simplify, Direction, SimplifyPolicy};
