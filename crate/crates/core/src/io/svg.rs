//! Minimal static SVG 1.1 line charts.

use std::fmt::Write as _;

use crate::evaluate::{Evaluation, Method, Metric};
use crate::series::TimeSeries;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 40.0;
const PALETTE: [&str; 7] = [
    "#444444", "#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b",
];

struct Frame {
    x: (f64, f64),
    y: (f64, f64),
}

impl Frame {
    fn fit(xs: impl Iterator<Item = f64> + Clone, ys: impl Iterator<Item = f64> + Clone) -> Self {
        let span = |it: &mut dyn Iterator<Item = f64>| {
            let (lo, hi) = it.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
                (lo.min(v), hi.max(v))
            });
            if lo.is_finite() && hi > lo {
                (lo, hi)
            } else if lo.is_finite() {
                (lo - 0.5, lo + 0.5)
            } else {
                (0.0, 1.0)
            }
        };
        Self {
            x: span(&mut xs.clone()),
            y: span(&mut ys.clone()),
        }
    }

    fn px(&self, x: f64) -> f64 {
        MARGIN + (x - self.x.0) / (self.x.1 - self.x.0) * (WIDTH - 2.0 * MARGIN)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - MARGIN - (y - self.y.0) / (self.y.1 - self.y.0) * (HEIGHT - 2.0 * MARGIN)
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn header(out: &mut String, title: &str) {
    let _ = writeln!(
        out,
        r#"<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">
<rect width="100%" height="100%" fill="white"/>
<text x="{MARGIN}" y="24" font-family="sans-serif" font-size="14">{}</text>"#,
        escape(title)
    );
}

fn polyline(out: &mut String, points: impl Iterator<Item = (f64, f64)>, colour: &str, label: &str) {
    let coords: Vec<String> = points.map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
    let _ = writeln!(
        out,
        r#"<polyline fill="none" stroke="{colour}" stroke-width="1.2" points="{}"><title>{}</title></polyline>"#,
        coords.join(" "),
        escape(label)
    );
}

fn legend(out: &mut String, entries: &[(&str, &str)]) {
    for (k, (label, colour)) in entries.iter().enumerate() {
        let y = MARGIN + 14.0 * k as f64;
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{y}" font-family="sans-serif" font-size="11" fill="{colour}">{}</text>"#,
            WIDTH - MARGIN - 140.0,
            escape(label)
        );
    }
}

/// The original series overlaid with each smoothed version, one polyline each.
pub fn series_chart(
    title: &str,
    original: &TimeSeries,
    smoothed: &[(&str, &TimeSeries)],
) -> String {
    let all = std::iter::once(original).chain(smoothed.iter().map(|s| s.1));
    let frame = Frame::fit(
        original.positions().into_iter(),
        all.flat_map(|s| s.values().iter().copied())
            .collect::<Vec<_>>()
            .into_iter(),
    );
    let mut out = String::new();
    header(&mut out, title);
    let mut names = vec![("original", PALETTE[0])];
    let draw = |out: &mut String, s: &TimeSeries, colour: &str, label: &str| {
        polyline(
            out,
            (0..s.len()).map(|i| (frame.px(s.position(i)), frame.py(s.values()[i]))),
            colour,
            label,
        );
    };
    draw(&mut out, original, PALETTE[0], "original");
    for (k, (name, s)) in smoothed.iter().enumerate() {
        let colour = PALETTE[1 + k % (PALETTE.len() - 1)];
        draw(&mut out, s, colour, name);
        names.push((name, colour));
    }
    legend(&mut out, &names);
    out.push_str("</svg>\n");
    out
}

/// Metric value against entropy: one scatter and one fitted line per method.
pub fn metric_chart(title: &str, eval: &Evaluation, metric: Metric) -> String {
    let frame = Frame::fit(
        eval.sweep_points.iter().map(|p| p.entropy),
        eval.sweep_points.iter().map(|p| p.metrics.get(metric)),
    );
    let mut out = String::new();
    header(
        &mut out,
        &format!("{title}: {} vs approximate entropy", metric.name()),
    );
    let mut methods: Vec<Method> = eval.sweep_points.iter().map(|p| p.method).collect();
    methods.dedup();
    let mut names = Vec::new();
    for (k, method) in methods.iter().enumerate() {
        let colour = PALETTE[1 + k % (PALETTE.len() - 1)];
        for p in eval.sweep_points.iter().filter(|p| p.method == *method) {
            let _ = writeln!(
                out,
                r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{colour}"/>"#,
                frame.px(p.entropy),
                frame.py(p.metrics.get(metric))
            );
        }
        let fit = eval
            .fits
            .iter()
            .find(|f| f.method == *method && f.metric == metric)
            .and_then(|f| f.fit);
        if let Some(line) = fit {
            let (a, b) = line.domain;
            polyline(
                &mut out,
                [a, b]
                    .into_iter()
                    .map(|x| (frame.px(x), frame.py(line.at(x)))),
                colour,
                method.name(),
            );
        }
        names.push((method.name(), colour));
    }
    legend(&mut out, &names);
    out.push_str("</svg>\n");
    out
}
