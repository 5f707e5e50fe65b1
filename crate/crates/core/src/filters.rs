//! Conventional smoothing baselines, one scalar parameter each.
//!
//! Every filter returns a series with the input's length, positions and label.
//! Windowed filters pad by replicating the boundary samples. Subsampling and
//! Douglas-Peucker keep a subset of samples and fill the rest by linear
//! interpolation in position space.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::fmt;

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::TimeSeries;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum FilterSpec {
    Median { window: usize },
    Gaussian { sigma: f64 },
    Cutoff { keep_frequencies: usize },
    Subsample { stride: usize },
    DouglasPeucker { epsilon: f64 },
}

impl FilterSpec {
    pub fn apply(&self, series: &TimeSeries) -> Result<TimeSeries> {
        match *self {
            FilterSpec::Median { window } => median_filter(series, window),
            FilterSpec::Gaussian { sigma } => gaussian_filter(series, sigma),
            FilterSpec::Cutoff { keep_frequencies } => cutoff_filter(series, keep_frequencies),
            FilterSpec::Subsample { stride } => uniform_subsample(series, stride),
            FilterSpec::DouglasPeucker { epsilon } => douglas_peucker(series, epsilon),
        }
    }
}

impl fmt::Display for FilterSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FilterSpec::Median { window } => write!(f, "median(window={window})"),
            FilterSpec::Gaussian { sigma } => write!(f, "gaussian(sigma={sigma})"),
            FilterSpec::Cutoff { keep_frequencies } => write!(f, "cutoff(keep={keep_frequencies})"),
            FilterSpec::Subsample { stride } => write!(f, "subsample(stride={stride})"),
            FilterSpec::DouglasPeucker { epsilon } => {
                write!(f, "douglas-peucker(epsilon={epsilon})")
            }
        }
    }
}

fn clamped(values: &[f64], i: isize) -> f64 {
    values[i.clamp(0, values.len() as isize - 1) as usize]
}

pub fn median_filter(series: &TimeSeries, window: usize) -> Result<TimeSeries> {
    if window == 0 || window.is_multiple_of(2) {
        return Err(Error::param(
            "window",
            format!("{window} must be odd and >= 1"),
        ));
    }
    let values = series.values();
    let half = (window / 2) as isize;
    let mut buf = Vec::with_capacity(window);
    let out = (0..values.len() as isize)
        .map(|i| {
            buf.clear();
            buf.extend((i - half..=i + half).map(|j| clamped(values, j)));
            buf.sort_by(f64::total_cmp);
            buf[window / 2]
        })
        .collect();
    series.with_values(out)
}

/// Normalised kernel `w[k + radius]` for offsets `-radius..=radius`, radius ⌈3σ⌉.
pub fn gaussian_kernel(sigma: f64) -> Vec<f64> {
    let radius = (3.0 * sigma).ceil() as isize;
    let raw: Vec<f64> = (-radius..=radius)
        .map(|k| (-((k * k) as f64) / (2.0 * sigma * sigma)).exp())
        .collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|w| w / total).collect()
}

pub fn gaussian_filter(series: &TimeSeries, sigma: f64) -> Result<TimeSeries> {
    if !(sigma >= 0.0) || !sigma.is_finite() {
        return Err(Error::param(
            "sigma",
            format!("{sigma} must be finite and >= 0"),
        ));
    }
    if sigma == 0.0 {
        return Ok(series.clone());
    }
    let kernel = gaussian_kernel(sigma);
    let radius = (kernel.len() / 2) as isize;
    let values = series.values();
    let out = (0..values.len() as isize)
        .map(|i| {
            kernel
                .iter()
                .enumerate()
                .map(|(k, w)| w * clamped(values, i + k as isize - radius))
                .sum()
        })
        .collect();
    series.with_values(out)
}

/// Low-pass by DFT: keeps the DC bin and the lowest `keep_frequencies` bins
/// together with their conjugate partners.
pub fn cutoff_filter(series: &TimeSeries, keep_frequencies: usize) -> Result<TimeSeries> {
    let n = series.len();
    let mut spectrum: Vec<Complex<f64>> = series
        .values()
        .iter()
        .map(|&v| Complex::new(v, 0.0))
        .collect();
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(n).process(&mut spectrum);
    for (k, bin) in spectrum.iter_mut().enumerate() {
        let frequency = k.min(n - k);
        if frequency > keep_frequencies {
            *bin = Complex::new(0.0, 0.0);
        }
    }
    planner.plan_fft_inverse(n).process(&mut spectrum);
    let scale = 1.0 / n as f64;
    series.with_values(spectrum.iter().map(|c| c.re * scale).collect())
}

/// Fills every index from the kept samples by linear interpolation in position space.
fn densify(series: &TimeSeries, kept: &[usize]) -> Result<TimeSeries> {
    let values = series.values();
    let mut out = values.to_vec();
    for w in kept.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (xa, xb) = (series.position(a), series.position(b));
        for (i, slot) in out.iter_mut().enumerate().take(b).skip(a + 1) {
            let t = (series.position(i) - xa) / (xb - xa);
            *slot = values[a] + t * (values[b] - values[a]);
        }
    }
    series.with_values(out)
}

pub fn uniform_subsample(series: &TimeSeries, stride: usize) -> Result<TimeSeries> {
    if stride == 0 {
        return Err(Error::param("stride", "must be >= 1"));
    }
    let n = series.len();
    let mut kept: Vec<usize> = (0..n).step_by(stride).collect();
    if kept.last() != Some(&(n - 1)) {
        kept.push(n - 1);
    }
    densify(series, &kept)
}

/// Largest vertical residual on the open stretch `(a, b)` against the chord `a–b`.
#[derive(Debug, Clone, Copy)]
struct Worst {
    distance: f64,
    index: usize,
    a: usize,
    b: usize,
}

impl PartialEq for Worst {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Worst {}

impl PartialOrd for Worst {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Worst {
    // Max-heap order: larger distance first, then smaller index.
    fn cmp(&self, other: &Self) -> Ordering {
        self.distance
            .total_cmp(&other.distance)
            .then(other.index.cmp(&self.index))
    }
}

fn worst_between(series: &TimeSeries, a: usize, b: usize) -> Option<Worst> {
    let values = series.values();
    let (xa, xb) = (series.position(a), series.position(b));
    (a + 1..b)
        .map(|i| {
            let t = (series.position(i) - xa) / (xb - xa);
            let chord = values[a] + t * (values[b] - values[a]);
            Worst {
                distance: (values[i] - chord).abs(),
                index: i,
                a,
                b,
            }
        })
        .max()
}

/// Insertion order of the greedy refinement together with the residual that
/// triggered each insertion. Boundaries come first with infinite residual.
pub fn douglas_peucker_order(series: &TimeSeries) -> Vec<(usize, f64)> {
    let n = series.len();
    let mut order = vec![(0, f64::INFINITY), (n - 1, f64::INFINITY)];
    let mut heap = BinaryHeap::new();
    heap.extend(worst_between(series, 0, n - 1));
    while let Some(w) = heap.pop() {
        order.push((w.index, w.distance));
        heap.extend(worst_between(series, w.a, w.index));
        heap.extend(worst_between(series, w.index, w.b));
    }
    order
}

/// Indices kept for tolerance `epsilon`, ascending.
pub fn douglas_peucker_kept(series: &TimeSeries, epsilon: f64) -> Result<Vec<usize>> {
    if !(epsilon >= 0.0) {
        return Err(Error::param("epsilon", format!("{epsilon} must be >= 0")));
    }
    let mut kept: Vec<usize> = douglas_peucker_order(series)
        .into_iter()
        .take_while(|&(_, d)| d > epsilon)
        .map(|(i, _)| i)
        .collect();
    kept.sort_unstable();
    Ok(kept)
}

pub fn douglas_peucker(series: &TimeSeries, epsilon: f64) -> Result<TimeSeries> {
    let kept = douglas_peucker_kept(series, epsilon)?;
    densify(series, &kept)
}
