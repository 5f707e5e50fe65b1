//! Canonical JSON rank reports and the per-run output files.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evaluate::{Evaluation, MethodFit, SweepFailure, SweepPoint};
use crate::io::config::RunConfig;
use crate::io::csv::write_csv;
use crate::io::svg;
use crate::persistence::PersistenceDiagram;
use crate::series::TimeSeries;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricEntry {
    pub auc: Option<f64>,
    pub rank: usize,
    pub unrankable: bool,
}

/// The JSON document written for one evaluated dataset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub dataset: String,
    pub methods: Vec<String>,
    pub metrics: BTreeMap<String, BTreeMap<String, MetricEntry>>,
    pub overall_rank: BTreeMap<String, f64>,
    pub shared_domain: (f64, f64),
    pub original_entropy: f64,
    pub fits: Vec<MethodFit>,
    pub sweep_points: Vec<SweepPoint>,
    pub failures: Vec<SweepFailure>,
    pub config: RunConfig,
}

impl ReportDocument {
    pub fn new(eval: &Evaluation, config: &RunConfig) -> Self {
        let metrics = eval
            .report
            .metrics
            .iter()
            .map(|(metric, ranked)| {
                let entries = ranked
                    .iter()
                    .map(|r| {
                        (
                            r.method.clone(),
                            MetricEntry {
                                auc: r.auc,
                                rank: r.rank,
                                unrankable: r.unrankable,
                            },
                        )
                    })
                    .collect();
                (metric.clone(), entries)
            })
            .collect();
        Self {
            dataset: eval.report.dataset.clone(),
            methods: eval.report.methods.clone(),
            metrics,
            overall_rank: eval.report.overall_rank.clone(),
            shared_domain: eval.shared_domain,
            original_entropy: eval.original_entropy,
            fits: eval.fits.clone(),
            sweep_points: eval.sweep_points.clone(),
            failures: eval.failures.clone(),
            config: config.clone(),
        }
    }
}

/// Pretty JSON with lexicographically sorted keys and shortest round-trip floats.
pub fn to_canonical_json<T: Serialize>(value: &T) -> Result<String> {
    let tree = serde_json::to_value(value)
        .map_err(|e| Error::Evaluation(format!("report serialisation: {e}")))?;
    let mut text = serde_json::to_string_pretty(&tree)
        .map_err(|e| Error::Evaluation(format!("report serialisation: {e}")))?;
    text.push('\n');
    Ok(text)
}

/// Persistence pairs as `birth_index,death_index,birth,death,persistence`.
pub fn format_pairs_csv(diagram: &PersistenceDiagram) -> String {
    let mut out = String::from("birth_index,death_index,birth,death,persistence\n");
    for p in diagram.pairs() {
        out.push_str(&format!(
            "{},{},{:?},{:?},{:?}\n",
            p.birth_index, p.death_index, p.birth_value, p.death_value, p.persistence
        ));
    }
    out
}

fn write(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::io(path, e))
}

fn ensure_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

fn stem(series: &TimeSeries) -> String {
    if series.label().is_empty() {
        "series".to_string()
    } else {
        series.label().to_string()
    }
}

/// Writes the files requested by `config.emit` for one smoothing run.
pub fn write_smoothed(
    original: &TimeSeries,
    smoothed: &TimeSeries,
    name: &str,
    config: &RunConfig,
) -> Result<Vec<PathBuf>> {
    ensure_dir(&config.out_dir)?;
    let base = format!("{}.{name}", stem(original));
    let mut written = Vec::new();
    if config.emit.csv {
        let path = config.out_dir.join(format!("{base}.csv"));
        write_csv(smoothed, &path)?;
        written.push(path);
    }
    if config.emit.svg {
        let path = config.out_dir.join(format!("{base}.svg"));
        write(
            &path,
            &svg::series_chart(&stem(original), original, &[(name, smoothed)]),
        )?;
        written.push(path);
    }
    Ok(written)
}

/// Writes the report JSON and charts for one evaluated dataset.
pub fn write_evaluation(
    original: &TimeSeries,
    eval: &Evaluation,
    config: &RunConfig,
) -> Result<Vec<PathBuf>> {
    ensure_dir(&config.out_dir)?;
    let base = stem(original);
    let mut written = Vec::new();
    if config.emit.json {
        let path = config.out_dir.join(format!("{base}.report.json"));
        write(
            &path,
            &to_canonical_json(&ReportDocument::new(eval, config))?,
        )?;
        written.push(path);
    }
    if config.emit.svg {
        for metric in crate::evaluate::Metric::ALL {
            let path = config.out_dir.join(format!("{base}.{}.svg", metric.name()));
            write(&path, &svg::metric_chart(&base, eval, metric))?;
            written.push(path);
        }
    }
    if config.emit.csv {
        let path = config.out_dir.join(format!("{base}.sweep.csv"));
        let mut out = String::from("method,parameter,entropy,l1,linf,w1,bottleneck\n");
        for p in &eval.sweep_points {
            out.push_str(&format!(
                "{},{:?},{:?},{:?},{:?},{:?},{:?}\n",
                p.method,
                p.parameter,
                p.entropy,
                p.metrics.l1,
                p.metrics.linf,
                p.metrics.w1,
                p.metrics.bottleneck
            ));
        }
        write(&path, &out)?;
        written.push(path);
    }
    Ok(written)
}
