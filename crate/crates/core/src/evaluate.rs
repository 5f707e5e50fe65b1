//! Entropy-calibrated comparison of smoothing methods.
//!
//! Each method is swept over its parameter grid. Every smoothed output is
//! scored with four error measures against the original and placed on the
//! approximate-entropy axis. A least-squares line per (method, measure) is
//! integrated over the entropy range shared by all methods, and methods are
//! ranked by that area, smallest first.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filters::FilterSpec;
use crate::metrics::{
    approx_entropy, bottleneck, norm_l1, norm_linf, points_of, wasserstein1, DiagramPoint,
    EntropyParams,
};
use crate::persistence::diagram_of;
use crate::series::TimeSeries;
use crate::simplify::{simplify, SimplifyPolicy};

pub const GRID_LEVELS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Topo,
    Median,
    Gaussian,
    Cutoff,
    Subsample,
    DouglasPeucker,
}

impl Method {
    pub const ALL: [Method; 6] = [
        Method::Topo,
        Method::Median,
        Method::Gaussian,
        Method::Cutoff,
        Method::Subsample,
        Method::DouglasPeucker,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Topo => "topo",
            Method::Median => "median",
            Method::Gaussian => "gaussian",
            Method::Cutoff => "cutoff",
            Method::Subsample => "subsample",
            Method::DouglasPeucker => "douglas-peucker",
        }
    }

    pub fn from_name(name: &str) -> Option<Method> {
        Method::ALL.into_iter().find(|m| m.name() == name)
    }

    /// Smooths with this method. Topo takes the removed fraction of pairs; the
    /// integer-valued parameters (window, keep, stride) must be whole numbers.
    pub fn smooth(self, series: &TimeSeries, parameter: f64) -> Result<TimeSeries> {
        let whole = |name: &'static str| -> Result<usize> {
            if parameter >= 0.0 && parameter.fract() == 0.0 && parameter.is_finite() {
                Ok(parameter as usize)
            } else {
                Err(Error::param(
                    name,
                    format!("{parameter} is not a non-negative integer"),
                ))
            }
        };
        match self {
            Method::Topo => simplify(series, SimplifyPolicy::Fraction(parameter)),
            Method::Median => FilterSpec::Median {
                window: whole("window")?,
            }
            .apply(series),
            Method::Gaussian => FilterSpec::Gaussian { sigma: parameter }.apply(series),
            Method::Cutoff => FilterSpec::Cutoff {
                keep_frequencies: whole("keep_frequencies")?,
            }
            .apply(series),
            Method::Subsample => FilterSpec::Subsample {
                stride: whole("stride")?,
            }
            .apply(series),
            Method::DouglasPeucker => {
                FilterSpec::DouglasPeucker { epsilon: parameter }.apply(series)
            }
        }
    }

    /// Twelve-level default grid, ordered from light to heavy smoothing.
    pub fn default_grid(self, series: &TimeSeries) -> Vec<f64> {
        let n = series.len();
        match self {
            Method::Topo => linspace(0.05, 0.95, GRID_LEVELS),
            Method::Median => (0..GRID_LEVELS).map(|k| (3 + 4 * k) as f64).collect(),
            Method::Gaussian => geomspace(0.5, 64.0, GRID_LEVELS),
            Method::Cutoff => {
                let top = (n / 2).max(1) as f64;
                rounded_unique(geomspace(top, 1.0, GRID_LEVELS))
            }
            Method::Subsample => rounded_unique(geomspace(2.0, 128.0, GRID_LEVELS)),
            Method::DouglasPeucker => {
                let (lo, hi) = series.min_max();
                let range = hi - lo;
                geomspace(0.01, 0.9, GRID_LEVELS)
                    .into_iter()
                    .map(|f| f * range)
                    .collect()
            }
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn linspace(a: f64, b: f64, k: usize) -> Vec<f64> {
    (0..k)
        .map(|i| a + (b - a) * i as f64 / (k - 1) as f64)
        .collect()
}

fn geomspace(a: f64, b: f64, k: usize) -> Vec<f64> {
    let (la, lb) = (a.ln(), b.ln());
    (0..k)
        .map(|i| (la + (lb - la) * i as f64 / (k - 1) as f64).exp())
        .collect()
}

fn rounded_unique(values: Vec<f64>) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::with_capacity(values.len());
    for v in values {
        let r = v.round();
        if out.last() != Some(&r) {
            out.push(r);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    L1,
    Linf,
    W1,
    Bottleneck,
}

impl Metric {
    pub const ALL: [Metric; 4] = [Metric::L1, Metric::Linf, Metric::W1, Metric::Bottleneck];

    pub fn name(self) -> &'static str {
        match self {
            Metric::L1 => "l1",
            Metric::Linf => "linf",
            Metric::W1 => "w1",
            Metric::Bottleneck => "bottleneck",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricValues {
    pub l1: f64,
    pub linf: f64,
    pub w1: f64,
    pub bottleneck: f64,
}

impl MetricValues {
    pub fn get(&self, metric: Metric) -> f64 {
        match metric {
            Metric::L1 => self.l1,
            Metric::Linf => self.linf,
            Metric::W1 => self.w1,
            Metric::Bottleneck => self.bottleneck,
        }
    }

    pub fn scaled(&self, metric: Metric, factor: f64) -> Self {
        let mut out = *self;
        match metric {
            Metric::L1 => out.l1 *= factor,
            Metric::Linf => out.linf *= factor,
            Metric::W1 => out.w1 *= factor,
            Metric::Bottleneck => out.bottleneck *= factor,
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub method: Method,
    pub parameter: f64,
    pub entropy: f64,
    pub metrics: MetricValues,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepFailure {
    pub method: Method,
    pub parameter: f64,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Sweep {
    pub points: Vec<SweepPoint>,
    pub failures: Vec<SweepFailure>,
}

/// Reference quantities of the original series shared by every sweep cell.
#[derive(Debug, Clone)]
pub struct Reference {
    pub series: TimeSeries,
    pub diagram: Vec<DiagramPoint>,
    pub entropy: EntropyParams,
    pub tolerance: f64,
}

impl Reference {
    pub fn new(series: &TimeSeries, entropy: EntropyParams) -> Result<Self> {
        Ok(Self {
            series: series.clone(),
            diagram: points_of(&diagram_of(series.values())?),
            entropy,
            tolerance: entropy.tolerance(series),
        })
    }

    pub fn score(&self, method: Method, parameter: f64) -> Result<SweepPoint> {
        let smoothed = method.smooth(&self.series, parameter)?;
        let diagram = points_of(&diagram_of(smoothed.values())?);
        Ok(SweepPoint {
            method,
            parameter,
            entropy: approx_entropy(&smoothed, self.entropy.m, self.tolerance)?,
            metrics: MetricValues {
                l1: norm_l1(&self.series, &smoothed)?,
                linf: norm_linf(&self.series, &smoothed)?,
                w1: wasserstein1(&self.diagram, &diagram)?,
                bottleneck: bottleneck(&self.diagram, &diagram)?,
            },
        })
    }
}

/// Scores `method` at every grid parameter. Failing parameters are recorded, not fatal.
pub fn sweep(
    series: &TimeSeries,
    method: Method,
    grid: &[f64],
    entropy: EntropyParams,
) -> Result<Sweep> {
    if grid.is_empty() {
        return Err(Error::param("grid", "empty parameter grid"));
    }
    let reference = Reference::new(series, entropy)?;
    Ok(sweep_with(&reference, method, grid))
}

pub fn sweep_with(reference: &Reference, method: Method, grid: &[f64]) -> Sweep {
    let cells: Vec<_> = grid
        .par_iter()
        .map(|&p| (p, reference.score(method, p)))
        .collect();
    let mut out = Sweep::default();
    for (parameter, cell) in cells {
        match cell {
            Ok(point) => out.points.push(point),
            Err(e) => out.failures.push(SweepFailure {
                method,
                parameter,
                reason: e.to_string(),
            }),
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitLine {
    pub slope: f64,
    pub intercept: f64,
    pub domain: (f64, f64),
}

impl FitLine {
    pub fn at(&self, x: f64) -> f64 {
        self.slope * x + self.intercept
    }
}

/// Ordinary least squares over `(x, y)` points.
pub fn fit_line(points: &[(f64, f64)]) -> Result<FitLine> {
    if points.len() < 2 {
        return Err(Error::Evaluation(format!(
            "line fit needs at least 2 points, got {}",
            points.len()
        )));
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let (lo, hi) = points
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
            (lo.min(p.0), hi.max(p.0))
        });
    if !(sxx > 0.0) || !(hi > lo) {
        return Err(Error::Evaluation(
            "line fit needs at least 2 distinct x values".into(),
        ));
    }
    let slope = sxy / sxx;
    Ok(FitLine {
        slope,
        intercept: my - slope * mx,
        domain: (lo, hi),
    })
}

/// Integral of `max(line, 0)` over `[e0, e1]`.
pub fn auc(fit: &FitLine, domain: (f64, f64)) -> Result<f64> {
    let (e0, e1) = domain;
    if !(e0 < e1) {
        return Err(Error::Evaluation(format!(
            "empty integration domain [{e0}, {e1}]"
        )));
    }
    let positive_area = |a: f64, b: f64| {
        let (ya, yb) = (fit.at(a), fit.at(b));
        (b - a) * (ya + yb) / 2.0
    };
    let (y0, y1) = (fit.at(e0), fit.at(e1));
    Ok(if y0 >= 0.0 && y1 >= 0.0 {
        positive_area(e0, e1)
    } else if y0 <= 0.0 && y1 <= 0.0 {
        0.0
    } else {
        let root = -fit.intercept / fit.slope;
        if y0 > 0.0 {
            positive_area(e0, root)
        } else {
            positive_area(root, e1)
        }
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedMethod {
    pub method: String,
    pub auc: Option<f64>,
    pub rank: usize,
    pub unrankable: bool,
}

/// Ranks by ascending AUC, ties by name. Entries without an AUC share rank
/// `count + 1` and are flagged.
pub fn rank_by_auc(entries: &[(String, Option<f64>)]) -> Vec<RankedMethod> {
    let mut ranked: Vec<&(String, Option<f64>)> =
        entries.iter().filter(|e| e.1.is_some()).collect();
    ranked.sort_by(|a, b| {
        a.1.unwrap()
            .total_cmp(&b.1.unwrap())
            .then_with(|| a.0.cmp(&b.0))
    });
    let mut out: Vec<RankedMethod> = ranked
        .into_iter()
        .enumerate()
        .map(|(i, (method, auc))| RankedMethod {
            method: method.clone(),
            auc: *auc,
            rank: i + 1,
            unrankable: false,
        })
        .collect();
    let mut unrankable: Vec<&String> = entries
        .iter()
        .filter(|e| e.1.is_none())
        .map(|e| &e.0)
        .collect();
    unrankable.sort();
    out.extend(unrankable.into_iter().map(|method| RankedMethod {
        method: method.clone(),
        auc: None,
        rank: entries.len() + 1,
        unrankable: true,
    }));
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankReport {
    pub dataset: String,
    pub methods: Vec<String>,
    pub metrics: BTreeMap<String, Vec<RankedMethod>>,
    /// Mean of the per-metric ranks.
    pub overall_rank: BTreeMap<String, f64>,
}

/// Builds the report from per-metric AUCs (`None` marks an unrankable fit).
pub fn rank_methods(
    dataset: &str,
    aucs: &BTreeMap<Metric, Vec<(String, Option<f64>)>>,
) -> Result<RankReport> {
    let mut methods: Vec<String> = aucs
        .values()
        .flat_map(|v| v.iter().map(|e| e.0.clone()))
        .collect();
    methods.sort();
    methods.dedup();
    if methods.len() < 2 {
        return Err(Error::Evaluation("ranking needs at least 2 methods".into()));
    }
    let mut metrics = BTreeMap::new();
    let mut totals: BTreeMap<String, (f64, usize)> = BTreeMap::new();
    for (metric, entries) in aucs {
        let ranked = rank_by_auc(entries);
        for r in &ranked {
            let t = totals.entry(r.method.clone()).or_default();
            t.0 += r.rank as f64;
            t.1 += 1;
        }
        metrics.insert(metric.name().to_string(), ranked);
    }
    Ok(RankReport {
        dataset: dataset.to_string(),
        methods,
        metrics,
        overall_rank: totals
            .into_iter()
            .map(|(m, (sum, count))| (m, sum / count as f64))
            .collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalConfig {
    pub methods: Vec<Method>,
    pub entropy: EntropyParams,
    /// Per-method grid overrides; methods not listed use their default grid.
    pub grids: BTreeMap<Method, Vec<f64>>,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            methods: Method::ALL.to_vec(),
            entropy: EntropyParams::default(),
            grids: BTreeMap::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodFit {
    pub method: Method,
    pub metric: Metric,
    pub fit: Option<FitLine>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub report: RankReport,
    pub shared_domain: (f64, f64),
    pub fits: Vec<MethodFit>,
    pub sweep_points: Vec<SweepPoint>,
    pub failures: Vec<SweepFailure>,
    pub original_entropy: f64,
}

/// Sweeps every configured method and ranks them.
pub fn evaluate(series: &TimeSeries, config: &EvalConfig) -> Result<Evaluation> {
    let reference = Reference::new(series, config.entropy)?;
    let original_entropy = approx_entropy(series, config.entropy.m, reference.tolerance)?;
    let mut methods = config.methods.clone();
    methods.sort();
    methods.dedup();

    let mut points = Vec::new();
    let mut failures = Vec::new();
    for &method in &methods {
        let grid = config
            .grids
            .get(&method)
            .cloned()
            .unwrap_or_else(|| method.default_grid(series));
        let s = sweep_with(&reference, method, &grid);
        points.extend(s.points);
        failures.extend(s.failures);
    }
    points.sort_by(|a, b| {
        a.method
            .cmp(&b.method)
            .then(a.parameter.total_cmp(&b.parameter))
    });
    assemble(series.label(), &methods, points, failures, original_entropy)
}

/// Fits, integrates and ranks already-scored sweep points.
pub fn assemble(
    dataset: &str,
    methods: &[Method],
    points: Vec<SweepPoint>,
    failures: Vec<SweepFailure>,
    original_entropy: f64,
) -> Result<Evaluation> {
    let mut fits = Vec::new();
    let mut domain = (f64::NEG_INFINITY, f64::INFINITY);
    for &method in methods {
        for metric in Metric::ALL {
            let xy: Vec<(f64, f64)> = points
                .iter()
                .filter(|p| p.method == method)
                .map(|p| (p.entropy, p.metrics.get(metric)))
                .collect();
            let fit = fit_line(&xy).ok();
            if let Some(f) = fit {
                domain = (domain.0.max(f.domain.0), domain.1.min(f.domain.1));
            }
            fits.push(MethodFit {
                method,
                metric,
                fit,
            });
        }
    }
    if !(domain.0 < domain.1) {
        return Err(Error::Evaluation(format!(
            "entropy ranges of the methods do not overlap (intersection [{}, {}])",
            domain.0, domain.1
        )));
    }

    let mut aucs: BTreeMap<Metric, Vec<(String, Option<f64>)>> = BTreeMap::new();
    for f in &fits {
        let area = match &f.fit {
            Some(line) => Some(auc(line, domain)?),
            None => None,
        };
        aucs.entry(f.metric)
            .or_default()
            .push((f.method.name().to_string(), area));
    }
    let report = rank_methods(dataset, &aucs)?;
    Ok(Evaluation {
        report,
        shared_domain: domain,
        fits,
        sweep_points: points,
        failures,
        original_entropy,
    })
}
