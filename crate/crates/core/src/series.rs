//! Series representation and extremum classification.
//!
//! The topology only looks at sample values and index adjacency; positions are
//! carried along for interpolation-based filters and for rendering.

use std::fmt;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite, ordered sequence of real samples with optional x-positions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeSeries {
    values: Vec<f64>,
    positions: Option<Vec<f64>>,
    label: String,
}

/// One broken invariant found by [`validate`].
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    TooShort { len: usize },
    NonFiniteValue { index: usize, value: f64 },
    NonFinitePosition { index: usize, value: f64 },
    PositionCount { values: usize, positions: usize },
    PositionsNotIncreasing { index: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TooShort { len } => write!(f, "length {len} < 2"),
            Violation::NonFiniteValue { index, value } => {
                write!(f, "value {value} at index {index} is not finite")
            }
            Violation::NonFinitePosition { index, value } => {
                write!(f, "position {value} at index {index} is not finite")
            }
            Violation::PositionCount { values, positions } => {
                write!(f, "{positions} positions for {values} values")
            }
            Violation::PositionsNotIncreasing { index } => {
                write!(f, "positions not strictly increasing at index {index}")
            }
        }
    }
}

/// Collects every invariant violation of a would-be series. Empty means valid.
pub fn validate(values: &[f64], positions: Option<&[f64]>) -> Vec<Violation> {
    let mut out = Vec::new();
    if values.len() < 2 {
        out.push(Violation::TooShort { len: values.len() });
    }
    for (index, &value) in values.iter().enumerate() {
        if !value.is_finite() {
            out.push(Violation::NonFiniteValue { index, value });
        }
    }
    if let Some(xs) = positions {
        if xs.len() != values.len() {
            out.push(Violation::PositionCount {
                values: values.len(),
                positions: xs.len(),
            });
        }
        for (index, &value) in xs.iter().enumerate() {
            if !value.is_finite() {
                out.push(Violation::NonFinitePosition { index, value });
            }
        }
        for index in 1..xs.len() {
            // NaN positions fail this comparison as well; they are already reported above.
            if xs[index].is_finite() && xs[index - 1].is_finite() && xs[index] <= xs[index - 1] {
                out.push(Violation::PositionsNotIncreasing { index });
            }
        }
    }
    out
}

fn check(values: &[f64], positions: Option<&[f64]>) -> Result<()> {
    let violations = validate(values, positions);
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidSeries(
            violations.iter().map(ToString::to_string).collect(),
        ))
    }
}

impl TimeSeries {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        check(&values, None)?;
        Ok(Self {
            values,
            positions: None,
            label: String::new(),
        })
    }

    pub fn with_positions(values: Vec<f64>, positions: Vec<f64>) -> Result<Self> {
        check(&values, Some(&positions))?;
        Ok(Self {
            values,
            positions: Some(positions),
            label: String::new(),
        })
    }

    pub fn labeled(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// A series with new values but the same positions and label.
    pub fn with_values(&self, values: Vec<f64>) -> Result<Self> {
        if values.len() != self.values.len() {
            return Err(Error::LengthMismatch {
                left: self.values.len(),
                right: values.len(),
            });
        }
        check(&values, None)?;
        Ok(Self {
            values,
            positions: self.positions.clone(),
            label: self.label.clone(),
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn explicit_positions(&self) -> Option<&[f64]> {
        self.positions.as_deref()
    }

    /// x-coordinate of sample `i`; the index itself when no positions were given.
    pub fn position(&self, i: usize) -> f64 {
        match &self.positions {
            Some(xs) => xs[i],
            None => i as f64,
        }
    }

    pub fn positions(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.position(i)).collect()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn min_max(&self) -> (f64, f64) {
        self.values
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExtremumKind {
    LocalMin,
    LocalMax,
}

/// A local extremum; plateaus are collapsed onto their leftmost index.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremumRecord {
    pub index: usize,
    pub kind: ExtremumKind,
    pub is_boundary: bool,
    pub plateau_span: RangeInclusive<usize>,
    pub value: f64,
}

/// Maximal runs of equal values as `(start, end, value)`, `end` inclusive.
pub(crate) fn plateau_runs(values: &[f64]) -> Vec<(usize, usize, f64)> {
    let mut runs = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || values[i] != values[start] {
            runs.push((start, i - 1, values[start]));
            start = i;
        }
    }
    runs
}

/// Lists all local extrema in index order.
///
/// Equal-value runs count as a single extremum anchored at their leftmost
/// index. A boundary sample is a minimum iff it lies below the next distinct
/// value. A constant series yields one boundary minimum spanning everything.
pub fn classify_extrema(series: &TimeSeries) -> Vec<ExtremumRecord> {
    classify_values(series.values())
}

pub(crate) fn classify_values(values: &[f64]) -> Vec<ExtremumRecord> {
    let runs = plateau_runs(values);
    let record = |(start, end, value): (usize, usize, f64), kind, is_boundary| ExtremumRecord {
        index: start,
        kind,
        is_boundary,
        plateau_span: start..=end,
        value,
    };
    if runs.len() == 1 {
        return vec![record(runs[0], ExtremumKind::LocalMin, true)];
    }
    let kind_vs = |v: f64, neighbour: f64| {
        if v < neighbour {
            ExtremumKind::LocalMin
        } else {
            ExtremumKind::LocalMax
        }
    };
    let last = runs.len() - 1;
    let mut out = Vec::with_capacity(runs.len());
    out.push(record(runs[0], kind_vs(runs[0].2, runs[1].2), true));
    for j in 1..last {
        let (prev, cur, next) = (runs[j - 1].2, runs[j].2, runs[j + 1].2);
        if cur < prev && cur < next {
            out.push(record(runs[j], ExtremumKind::LocalMin, false));
        } else if cur > prev && cur > next {
            out.push(record(runs[j], ExtremumKind::LocalMax, false));
        }
    }
    out.push(record(
        runs[last],
        kind_vs(runs[last].2, runs[last - 1].2),
        true,
    ));
    out
}
