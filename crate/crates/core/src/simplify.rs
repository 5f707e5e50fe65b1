//! Persistence-guided simplification.
//!
//! Low-persistence extrema pairs are dropped and the series is rebuilt so that
//! it is monotone between the surviving extrema. Each stretch between two
//! surviving points is the least-squares monotone fit of the original samples.

use std::collections::{BTreeSet, HashMap};
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::persistence::{
    pair_order, persistence_of_extrema, BoundaryRule, ExtremaPair, PersistenceDiagram,
};
use crate::series::{classify_values, TimeSeries};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SimplifyPolicy {
    /// Remove every pair with persistence strictly below `t`.
    Threshold(f64),
    /// Remove the ⌊q·m⌋ lowest-ranked of the m pairs.
    Fraction(f64),
}

impl SimplifyPolicy {
    pub fn check(&self) -> Result<()> {
        match *self {
            SimplifyPolicy::Threshold(t) if !(t >= 0.0) => {
                Err(Error::param("threshold", format!("{t} must be >= 0")))
            }
            SimplifyPolicy::Fraction(q) if !(0.0..=1.0).contains(&q) => {
                Err(Error::param("fraction", format!("{q} must lie in [0, 1]")))
            }
            _ => Ok(()),
        }
    }
}

/// Splits the diagram's pairs into `(retained, removed)`; both lists keep the
/// diagram's ascending-persistence order.
pub fn select_pairs(
    diagram: &PersistenceDiagram,
    policy: SimplifyPolicy,
) -> Result<(Vec<ExtremaPair>, Vec<ExtremaPair>)> {
    policy.check()?;
    let pairs = diagram.pairs();
    Ok(match policy {
        SimplifyPolicy::Threshold(t) => {
            let (removed, retained): (Vec<_>, Vec<_>) =
                pairs.iter().partition(|p| p.persistence < t);
            (retained, removed)
        }
        SimplifyPolicy::Fraction(q) => {
            let cut = ((q * pairs.len() as f64).floor() as usize).min(pairs.len());
            (pairs[cut..].to_vec(), pairs[..cut].to_vec())
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    Increasing,
    Decreasing,
}

/// Least-squares monotone fit by pool-adjacent-violators, linear time.
pub fn isotonic_fit(values: &[f64], direction: Direction) -> Result<Vec<f64>> {
    if values.is_empty() {
        return Err(Error::param("values", "isotonic fit of an empty sequence"));
    }
    Ok(match direction {
        Direction::Increasing => pava(values),
        Direction::Decreasing => {
            let negated: Vec<f64> = values.iter().map(|v| -v).collect();
            pava(&negated).into_iter().map(|v| -v).collect()
        }
    })
}

fn pava(values: &[f64]) -> Vec<f64> {
    // Blocks as (sum, count); a block's level is its mean.
    let mut blocks: Vec<(f64, usize)> = Vec::with_capacity(values.len());
    for &v in values {
        let mut block = (v, 1usize);
        while let Some(&(sum, count)) = blocks.last() {
            if sum / count as f64 > block.0 / block.1 as f64 {
                blocks.pop();
                block = (block.0 + sum, block.1 + count);
            } else {
                break;
            }
        }
        blocks.push(block);
    }
    let mut out = Vec::with_capacity(values.len());
    for (sum, count) in blocks {
        out.extend(std::iter::repeat_n(sum / count as f64, count));
    }
    out
}

/// Pairs with identical birth and death values are interchangeable in the
/// diagram, but only the innermost of a nested run can be cancelled without
/// touching the others. Within each such group, the outermost pairs are the
/// ones kept; the retained value multiset is unchanged.
fn realizable(
    retained: Vec<ExtremaPair>,
    removed: Vec<ExtremaPair>,
) -> (Vec<ExtremaPair>, Vec<ExtremaPair>) {
    let key = |p: &ExtremaPair| (p.birth_value.to_bits(), p.death_value.to_bits());
    let mut groups: HashMap<(u64, u64), (usize, Vec<ExtremaPair>)> = HashMap::new();
    for p in &retained {
        let g = groups.entry(key(p)).or_default();
        g.0 += 1;
        g.1.push(*p);
    }
    for p in &removed {
        groups.entry(key(p)).or_default().1.push(*p);
    }
    let (mut keep, mut drop) = (Vec::new(), Vec::new());
    for (_, (count, mut members)) in groups {
        let width = |p: &ExtremaPair| p.span().1 - p.span().0;
        members.sort_by(|a, b| {
            width(b)
                .cmp(&width(a))
                .then(a.birth_index.cmp(&b.birth_index))
        });
        let rest = members.split_off(count);
        keep.extend(members);
        drop.extend(rest);
    }
    keep.sort_by(pair_order);
    drop.sort_by(pair_order);
    (keep, drop)
}

/// Result of [`simplify_detailed`].
#[derive(Debug, Clone)]
pub struct Simplification {
    pub series: TimeSeries,
    pub retained: Vec<ExtremaPair>,
    pub removed: Vec<ExtremaPair>,
    /// Sample indices whose input values were copied through unchanged.
    pub anchors: Vec<usize>,
}

pub fn simplify(series: &TimeSeries, policy: SimplifyPolicy) -> Result<TimeSeries> {
    Ok(simplify_detailed(series, policy)?.series)
}

/// Simplifies and reports which pairs and anchor samples were kept.
///
/// `retained` and `removed` hold the same values as [`select_pairs`] returns;
/// among pairs with identical values, nested inner ones are the ones removed.
///
/// Anchors are the two boundary samples, the plateaus of every retained
/// extremum, and the plateau of the global minimum. Between consecutive
/// anchors the output is the monotone fit of the input stretch (anchors
/// included), clipped into the interval spanned by the two anchor values.
pub fn simplify_detailed(series: &TimeSeries, policy: SimplifyPolicy) -> Result<Simplification> {
    policy.check()?;
    let values = series.values();
    let n = values.len();
    let extrema = classify_values(values);
    let (diagram, _) = persistence_of_extrema(&extrema, n, BoundaryRule::Standard);
    let (retained, removed) = select_pairs(&diagram, policy)?;
    let (retained, removed) = realizable(retained, removed);

    let spans: HashMap<usize, RangeInclusive<usize>> = extrema
        .iter()
        .map(|r| (r.index, r.plateau_span.clone()))
        .collect();
    let mut anchors = BTreeSet::from([0, n - 1]);
    let mut pin = |index: usize| anchors.extend(spans[&index].clone());
    pin(diagram.essential_min_index());
    for p in &retained {
        pin(p.birth_index);
        pin(p.death_index);
    }
    let anchors: Vec<usize> = anchors.into_iter().collect();

    let mut out = values.to_vec();
    for w in anchors.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b - a < 2 {
            continue;
        }
        let (va, vb) = (values[a], values[b]);
        let direction = if vb >= va {
            Direction::Increasing
        } else {
            Direction::Decreasing
        };
        let fitted = isotonic_fit(&values[a..=b], direction)?;
        let (lo, hi) = (va.min(vb), va.max(vb));
        for (slot, v) in out[a + 1..b].iter_mut().zip(&fitted[1..fitted.len() - 1]) {
            *slot = v.clamp(lo, hi);
        }
    }

    Ok(Simplification {
        series: series.with_values(out)?,
        retained,
        removed,
        anchors,
    })
}
