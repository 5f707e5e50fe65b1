//! One value per line, or `x,y` pairs. An optional single header line and
//! `#` comment lines are skipped.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::series::{validate, TimeSeries};

pub fn load_csv(path: impl AsRef<Path>) -> Result<TimeSeries> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let label = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    Ok(parse_csv(&text)?.labeled(label))
}

pub fn parse_csv(text: &str) -> Result<TimeSeries> {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut columns = None;
    let mut header_seen = false;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let parsed: std::result::Result<Vec<f64>, _> =
            fields.iter().map(|f| f.parse::<f64>()).collect();
        let numbers = match parsed {
            Ok(v) => v,
            Err(_) if !header_seen && columns.is_none() => {
                header_seen = true;
                continue;
            }
            Err(e) => {
                return Err(Error::Parse {
                    line: line_no,
                    reason: format!("{line:?}: {e}"),
                })
            }
        };
        if !(1..=2).contains(&numbers.len()) {
            return Err(Error::Parse {
                line: line_no,
                reason: format!("expected 1 or 2 columns, found {}", numbers.len()),
            });
        }
        match columns {
            None => columns = Some(numbers.len()),
            Some(c) if c != numbers.len() => {
                return Err(Error::Parse {
                    line: line_no,
                    reason: format!("expected {c} columns, found {}", numbers.len()),
                })
            }
            _ => {}
        }
        if numbers.len() == 2 {
            if let Some(&prev) = xs.last() {
                if numbers[0] <= prev {
                    return Err(Error::Parse {
                        line: line_no,
                        reason: format!("x = {} does not increase", numbers[0]),
                    });
                }
            }
            xs.push(numbers[0]);
            ys.push(numbers[1]);
        } else {
            ys.push(numbers[0]);
        }
    }
    let positions = (columns == Some(2)).then_some(xs);
    let violations = validate(&ys, positions.as_deref());
    if !violations.is_empty() {
        return Err(Error::InvalidSeries(
            violations.iter().map(ToString::to_string).collect(),
        ));
    }
    match positions {
        Some(xs) => TimeSeries::with_positions(ys, xs),
        None => TimeSeries::new(ys),
    }
}

/// Serialises in the format [`parse_csv`] reads back exactly. Floats use the
/// shortest representation that round-trips.
pub fn format_csv(series: &TimeSeries) -> String {
    let mut out = String::new();
    match series.explicit_positions() {
        Some(xs) => {
            out.push_str("x,y\n");
            for (x, y) in xs.iter().zip(series.values()) {
                let _ = writeln!(out, "{x:?},{y:?}");
            }
        }
        None => {
            for y in series.values() {
                let _ = writeln!(out, "{y:?}");
            }
        }
    }
    out
}

pub fn write_csv(series: &TimeSeries, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, format_csv(series)).map_err(|e| Error::io(path, e))
}
