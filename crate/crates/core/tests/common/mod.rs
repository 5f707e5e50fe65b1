//! Independent reference implementations used as test oracles. None of them
//! shares code with the library; they are slow and deliberately naive.

#![allow(dead_code)]

use rand::Rng;

/// A pair as `(birth_index, death_index, birth_value, death_value)`.
pub type RawPair = (usize, usize, f64, f64);

/// Leftmost index of the equal-value run containing `i`.
pub fn run_start(values: &[f64], mut i: usize) -> usize {
    while i > 0 && values[i - 1] == values[i] {
        i -= 1;
    }
    i
}

/// Sublevel-set component tracking over the raw samples, no preprocessing.
///
/// Vertices enter in (value, index) order; a vertex whose two neighbours sit
/// in different components kills the younger one (larger birth value, then
/// larger birth index). With `virtual_sinks`, a boundary sample that is a
/// maximum gets an extra neighbour at −∞ that is present from the start, and
/// pairs born at such a neighbour are not reported. Indices are mapped to the
/// leftmost sample of their plateau and zero-persistence pairs are dropped.
///
/// Returns the pairs and the index of the surviving (essential) birth.
pub fn sublevel_pairs(values: &[f64], virtual_sinks: bool) -> (Vec<RawPair>, usize) {
    let n = values.len();
    // Slots 0..n are samples, n is the left sink, n+1 the right sink.
    let mut present = vec![false; n + 2];
    let mut label: Vec<usize> = (0..n + 2).collect();
    // birth of a component, keyed by its label: (value, sample-or-sink order key, slot)
    let mut birth: Vec<(f64, i64, usize)> = (0..n + 2).map(|s| (0.0, 0, s)).collect();

    let first_is_max = {
        let next = values.iter().find(|&&v| v != values[0]);
        matches!(next, Some(&v) if values[0] > v)
    };
    let last_is_max = {
        let prev = values.iter().rev().find(|&&v| v != values[n - 1]);
        matches!(prev, Some(&v) if values[n - 1] > v)
    };
    let sink_left = virtual_sinks && first_is_max;
    let sink_right = virtual_sinks && last_is_max;
    if sink_left {
        present[n] = true;
        birth[n] = (f64::NEG_INFINITY, -1, n);
    }
    if sink_right {
        present[n + 1] = true;
        birth[n + 1] = (f64::NEG_INFINITY, n as i64, n + 1);
    }

    let neighbours = |i: usize| -> Vec<usize> {
        let mut out = Vec::new();
        if i > 0 {
            out.push(i - 1);
        } else if sink_left {
            out.push(n);
        }
        if i + 1 < n {
            out.push(i + 1);
        } else if sink_right {
            out.push(n + 1);
        }
        out
    };

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));

    let older = |x: (f64, i64, usize), y: (f64, i64, usize)| x.0 < y.0 || (x.0 == y.0 && x.1 < y.1);

    let mut pairs = Vec::new();
    for &i in &order {
        present[i] = true;
        let mut comps: Vec<usize> = neighbours(i)
            .into_iter()
            .filter(|&s| present[s])
            .map(|s| label[s])
            .collect();
        comps.dedup();
        match comps.len() {
            0 => birth[i] = (values[i], i as i64, i),
            1 => label[i] = comps[0],
            _ => {
                let (a, b) = (comps[0], comps[1]);
                let (keep, kill) = if older(birth[a], birth[b]) {
                    (a, b)
                } else {
                    (b, a)
                };
                let (bv, _, bslot) = birth[kill];
                if bslot < n && values[i] > bv {
                    pairs.push((
                        run_start(values, bslot),
                        run_start(values, i),
                        bv,
                        values[i],
                    ));
                }
                for l in label.iter_mut() {
                    if *l == kill {
                        *l = keep;
                    }
                }
                label[i] = keep;
            }
        }
    }
    let essential = birth[label[order[0]]].2;
    (pairs, essential)
}

/// Sorted copy for multiset comparison.
pub fn canonical(mut pairs: Vec<RawPair>) -> Vec<RawPair> {
    pairs.sort_by(|a, b| {
        a.0.cmp(&b.0)
            .then(a.1.cmp(&b.1))
            .then(a.2.total_cmp(&b.2))
            .then(a.3.total_cmp(&b.3))
    });
    pairs
}

pub fn sorted_values(mut pairs: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    pairs
}

/// Least-squares nondecreasing fit by trying every split into contiguous
/// blocks; the optimum is always a feasible block-mean assignment.
pub fn brute_isotonic(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let mut best: Option<(f64, Vec<f64>)> = None;
    for mask in 0u32..(1 << (n - 1)) {
        let mut fit = Vec::with_capacity(n);
        let mut start = 0;
        for end in 1..=n {
            if end == n || mask & (1 << (end - 1)) != 0 {
                let block = &values[start..end];
                let mean = block.iter().sum::<f64>() / block.len() as f64;
                fit.extend(std::iter::repeat_n(mean, block.len()));
                start = end;
            }
        }
        if fit.windows(2).any(|w| w[0] > w[1] + 1e-12) {
            continue;
        }
        let sse = sse(values, &fit);
        if best.as_ref().is_none_or(|(b, _)| sse < *b) {
            best = Some((sse, fit));
        }
    }
    best.unwrap().1
}

pub fn sse(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum()
}

/// Diagram point as (birth, death).
pub type Pt = (f64, f64);

/// Optimal partial matching cost by enumerating every injection of part of
/// `a` into `b`; everything unmatched goes to the diagonal. `sum` selects
/// total cost (W1 with l1 ground cost, diagonal = persistence) or maximum
/// cost (bottleneck with l∞ ground cost, diagonal = persistence / 2).
pub fn exhaustive_distance(a: &[Pt], b: &[Pt], sum: bool) -> f64 {
    let pair_cost = |p: Pt, q: Pt| {
        if sum {
            (p.0 - q.0).abs() + (p.1 - q.1).abs()
        } else {
            (p.0 - q.0).abs().max((p.1 - q.1).abs())
        }
    };
    let diag = |p: Pt| if sum { p.1 - p.0 } else { (p.1 - p.0) / 2.0 };
    let combine = |acc: f64, c: f64| if sum { acc + c } else { acc.max(c) };

    #[allow(clippy::too_many_arguments)]
    fn rec(
        i: usize,
        a: &[Pt],
        b: &[Pt],
        used: &mut Vec<bool>,
        acc: f64,
        best: &mut f64,
        pair_cost: &dyn Fn(Pt, Pt) -> f64,
        diag: &dyn Fn(Pt) -> f64,
        combine: &dyn Fn(f64, f64) -> f64,
    ) {
        if i == a.len() {
            let mut total = acc;
            for (j, q) in b.iter().enumerate() {
                if !used[j] {
                    total = combine(total, diag(*q));
                }
            }
            if total < *best {
                *best = total;
            }
            return;
        }
        rec(
            i + 1,
            a,
            b,
            used,
            combine(acc, diag(a[i])),
            best,
            pair_cost,
            diag,
            combine,
        );
        for j in 0..b.len() {
            if !used[j] {
                used[j] = true;
                rec(
                    i + 1,
                    a,
                    b,
                    used,
                    combine(acc, pair_cost(a[i], b[j])),
                    best,
                    pair_cost,
                    diag,
                    combine,
                );
                used[j] = false;
            }
        }
    }

    let mut best = f64::INFINITY;
    rec(
        0,
        a,
        b,
        &mut vec![false; b.len()],
        0.0,
        &mut best,
        &pair_cost,
        &diag,
        &combine,
    );
    best
}

/// Approximate entropy written straight from its definition, with self-matches.
pub fn apen_direct(x: &[f64], m: usize, r: f64) -> f64 {
    let phi = |m: usize| {
        let count = x.len() - m + 1;
        let mut total = 0.0;
        for i in 0..count {
            let mut c = 0usize;
            for j in 0..count {
                let close = (0..m).all(|k| (x[i + k] - x[j + k]).abs() <= r);
                if close {
                    c += 1;
                }
            }
            total += (c as f64 / count as f64).ln();
        }
        total / count as f64
    };
    phi(m) - phi(m + 1)
}

pub fn random_diagram(rng: &mut impl Rng, max_points: usize) -> Vec<Pt> {
    let k = rng.gen_range(0..=max_points);
    (0..k)
        .map(|_| {
            let b: f64 = rng.gen_range(-5.0..5.0);
            let p: f64 = rng.gen_range(0.0..4.0);
            (b, b + p)
        })
        .collect()
}

/// Random series with deliberate ties: a few distinct levels, or a continuous draw.
pub fn random_series(rng: &mut impl Rng, min_len: usize, max_len: usize) -> Vec<f64> {
    let n = rng.gen_range(min_len..=max_len);
    if rng.gen_bool(0.5) {
        let levels = rng.gen_range(2..=6);
        (0..n).map(|_| rng.gen_range(0..levels) as f64).collect()
    } else {
        (0..n).map(|_| rng.gen_range(-10.0..10.0)).collect()
    }
}
