//! Residual norms, persistence-diagram distances and approximate entropy.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::persistence::PersistenceDiagram;
use crate::series::TimeSeries;

fn same_len(a: &TimeSeries, b: &TimeSeries) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(())
}

/// Sum of absolute pointwise differences.
pub fn norm_l1(a: &TimeSeries, b: &TimeSeries) -> Result<f64> {
    same_len(a, b)?;
    Ok(a.values()
        .iter()
        .zip(b.values())
        .map(|(x, y)| (x - y).abs())
        .sum())
}

/// Largest absolute pointwise difference.
pub fn norm_linf(a: &TimeSeries, b: &TimeSeries) -> Result<f64> {
    same_len(a, b)?;
    Ok(a.values()
        .iter()
        .zip(b.values())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max))
}

/// A finite off-diagonal point of a persistence diagram.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiagramPoint {
    pub birth: f64,
    pub death: f64,
}

impl DiagramPoint {
    pub fn new(birth: f64, death: f64) -> Self {
        Self { birth, death }
    }

    pub fn persistence(&self) -> f64 {
        self.death - self.birth
    }

    fn l1(&self, other: &Self) -> f64 {
        (self.birth - other.birth).abs() + (self.death - other.death).abs()
    }

    fn linf(&self, other: &Self) -> f64 {
        (self.birth - other.birth)
            .abs()
            .max((self.death - other.death).abs())
    }
}

/// The finite pairs of a diagram as points; the essential component is left out.
pub fn points_of(diagram: &PersistenceDiagram) -> Vec<DiagramPoint> {
    diagram
        .pairs()
        .iter()
        .map(|p| DiagramPoint::new(p.birth_value, p.death_value))
        .collect()
}

fn check_points(points: &[DiagramPoint]) -> Result<()> {
    for p in points {
        if !p.birth.is_finite() || !p.death.is_finite() || p.death < p.birth {
            return Err(Error::param(
                "diagram",
                format!(
                    "point ({}, {}) is not a finite off-diagonal point",
                    p.birth, p.death
                ),
            ));
        }
    }
    Ok(())
}

/// One side of a matched edge.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Matched {
    Point(usize),
    Diagonal,
}

/// Optimal partial matching between two diagrams. Every off-diagonal point of
/// either side appears exactly once; unmatched points go to the diagonal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Matching {
    pub pairs: Vec<(Matched, Matched)>,
    pub total_cost: f64,
}

pub fn wasserstein1(a: &[DiagramPoint], b: &[DiagramPoint]) -> Result<f64> {
    Ok(wasserstein1_matching(a, b)?.total_cost)
}

/// 1-Wasserstein distance with l1 ground cost; a point's diagonal cost is its persistence.
///
/// Points present in both diagrams with identical coordinates are matched
/// to each other up front (this never increases the cost of an optimal
/// matching under a metric ground cost); the remainder is solved exactly with
/// the Hungarian method on the diagonal-augmented square cost matrix.
pub fn wasserstein1_matching(a: &[DiagramPoint], b: &[DiagramPoint]) -> Result<Matching> {
    check_points(a)?;
    check_points(b)?;

    let key = |p: &DiagramPoint| (p.birth.to_bits(), p.death.to_bits());
    let mut b_by_key: std::collections::HashMap<(u64, u64), Vec<usize>> =
        std::collections::HashMap::new();
    for (j, p) in b.iter().enumerate().rev() {
        b_by_key.entry(key(p)).or_default().push(j);
    }
    let mut pairs = Vec::new();
    let mut rest_a = Vec::new();
    for (i, p) in a.iter().enumerate() {
        match b_by_key.get_mut(&key(p)).and_then(Vec::pop) {
            Some(j) => pairs.push((Matched::Point(i), Matched::Point(j))),
            None => rest_a.push(i),
        }
    }
    let mut rest_b: Vec<usize> = b_by_key.into_values().flatten().collect();
    rest_b.sort_unstable();

    let (n, m) = (rest_a.len(), rest_b.len());
    let size = n + m;
    let mut cost = vec![0.0; size * size];
    for r in 0..size {
        for c in 0..size {
            cost[r * size + c] = match (r < n, c < m) {
                (true, true) => a[rest_a[r]].l1(&b[rest_b[c]]),
                (true, false) => a[rest_a[r]].persistence(),
                (false, true) => b[rest_b[c]].persistence(),
                (false, false) => 0.0,
            };
        }
    }
    let assignment = hungarian(&cost, size);
    let mut total = 0.0;
    for (r, &c) in assignment.iter().enumerate() {
        total += cost[r * size + c];
        match (r < n, c < m) {
            (true, true) => pairs.push((Matched::Point(rest_a[r]), Matched::Point(rest_b[c]))),
            (true, false) => pairs.push((Matched::Point(rest_a[r]), Matched::Diagonal)),
            (false, true) => pairs.push((Matched::Diagonal, Matched::Point(rest_b[c]))),
            (false, false) => {}
        }
    }
    Ok(Matching {
        pairs,
        total_cost: total,
    })
}

/// Minimum-cost perfect assignment on a dense `size × size` matrix; returns
/// the column assigned to each row. Shortest augmenting paths with potentials, O(size³).
fn hungarian(cost: &[f64], size: usize) -> Vec<usize> {
    if size == 0 {
        return Vec::new();
    }
    // 1-based rows/columns; column 0 is the virtual source.
    let mut u = vec![0.0; size + 1];
    let mut v = vec![0.0; size + 1];
    let mut owner = vec![0usize; size + 1];
    let mut way = vec![0usize; size + 1];
    let mut minv = vec![f64::INFINITY; size + 1];
    let mut used = vec![false; size + 1];
    for row in 1..=size {
        owner[0] = row;
        let mut col0 = 0;
        minv.fill(f64::INFINITY);
        used.fill(false);
        loop {
            used[col0] = true;
            let r0 = owner[col0];
            let base = (r0 - 1) * size;
            let mut delta = f64::INFINITY;
            let mut col1 = 0;
            for col in 1..=size {
                if !used[col] {
                    let reduced = cost[base + col - 1] - u[r0] - v[col];
                    if reduced < minv[col] {
                        minv[col] = reduced;
                        way[col] = col0;
                    }
                    if minv[col] < delta {
                        delta = minv[col];
                        col1 = col;
                    }
                }
            }
            for col in 0..=size {
                if used[col] {
                    u[owner[col]] += delta;
                    v[col] -= delta;
                } else {
                    minv[col] -= delta;
                }
            }
            col0 = col1;
            if owner[col0] == 0 {
                break;
            }
        }
        loop {
            let prev = way[col0];
            owner[col0] = owner[prev];
            col0 = prev;
            if col0 == 0 {
                break;
            }
        }
    }
    let mut assignment = vec![0; size];
    for col in 1..=size {
        assignment[owner[col] - 1] = col - 1;
    }
    assignment
}

pub fn bottleneck(a: &[DiagramPoint], b: &[DiagramPoint]) -> Result<f64> {
    Ok(bottleneck_matching(a, b)?.total_cost)
}

/// Bottleneck distance with l∞ ground cost; a point's diagonal cost is half its persistence.
///
/// The answer is one of the candidate edge costs. For a candidate `c`, a
/// matching of cost ≤ `c` exists iff every point farther than `c` from the
/// diagonal can be matched to an opposite point within `c`; by the
/// Mendelsohn–Dulmage theorem it suffices to check the two sides separately.
/// `total_cost` of the returned matching is the bottleneck value.
pub fn bottleneck_matching(a: &[DiagramPoint], b: &[DiagramPoint]) -> Result<Matching> {
    check_points(a)?;
    check_points(b)?;
    let half = |p: &DiagramPoint| p.persistence() / 2.0;
    let upper = a.iter().chain(b).map(half).fold(0.0, f64::max);

    let mut candidates: Vec<f64> = a.iter().chain(b).map(half).collect();
    candidates.push(0.0);
    for p in a {
        for q in b {
            let d = p.linf(q);
            if d <= upper {
                candidates.push(d);
            }
        }
    }
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();

    // Smallest feasible candidate; the largest is always feasible (all to the diagonal).
    let (mut lo, mut hi) = (0usize, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if bottleneck_feasible(a, b, candidates[mid]).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let value = candidates[lo];
    let pairs = bottleneck_feasible(a, b, value).expect("final candidate is feasible");
    Ok(Matching {
        pairs,
        total_cost: value,
    })
}

/// Matching of cost ≤ `c`, or `None` when none exists.
fn bottleneck_feasible(
    a: &[DiagramPoint],
    b: &[DiagramPoint],
    c: f64,
) -> Option<Vec<(Matched, Matched)>> {
    let big = |p: &DiagramPoint| p.persistence() / 2.0 > c;
    let adjacency = |from: &[DiagramPoint], to: &[DiagramPoint]| -> Vec<Vec<usize>> {
        from.iter()
            .map(|p| {
                (0..to.len())
                    .filter(|&j| p.linf(&to[j]) <= c)
                    .collect::<Vec<_>>()
            })
            .collect()
    };
    let a_to_b = adjacency(a, b);
    let b_to_a = adjacency(b, a);

    let big_a: Vec<usize> = (0..a.len()).filter(|&i| big(&a[i])).collect();
    let big_b: Vec<usize> = (0..b.len()).filter(|&j| big(&b[j])).collect();
    let m1 = saturating_matching(&big_a, &a_to_b, b.len())?;
    let m2 = saturating_matching(&big_b, &b_to_a, a.len())?;

    // Combine the two one-sided matchings into one covering both big sets.
    let combined = mendelsohn_dulmage(a.len(), b.len(), &m1, &m2);
    let mut pairs = Vec::new();
    let mut b_used = vec![false; b.len()];
    for (i, partner) in combined.iter().enumerate() {
        match partner {
            Some(j) => {
                b_used[*j] = true;
                pairs.push((Matched::Point(i), Matched::Point(*j)));
            }
            None => pairs.push((Matched::Point(i), Matched::Diagonal)),
        }
    }
    for (j, used) in b_used.into_iter().enumerate() {
        if !used {
            pairs.push((Matched::Diagonal, Matched::Point(j)));
        }
    }
    Some(pairs)
}

/// Maximum matching from `sources` into `0..targets` by augmenting paths;
/// `None` unless every source is matched. Returns `source -> target`.
fn saturating_matching(
    sources: &[usize],
    adjacency: &[Vec<usize>],
    targets: usize,
) -> Option<Vec<(usize, usize)>> {
    let mut target_owner: Vec<Option<usize>> = vec![None; targets];
    let mut source_partner: Vec<Option<usize>> = vec![None; adjacency.len()];
    for &s in sources {
        let mut seen = vec![false; targets];
        if !augment(
            s,
            adjacency,
            &mut seen,
            &mut target_owner,
            &mut source_partner,
        ) {
            return None;
        }
    }
    Some(
        sources
            .iter()
            .map(|&s| (s, source_partner[s].expect("matched")))
            .collect(),
    )
}

fn augment(
    s: usize,
    adjacency: &[Vec<usize>],
    seen: &mut [bool],
    target_owner: &mut [Option<usize>],
    source_partner: &mut [Option<usize>],
) -> bool {
    // Iterative DFS over alternating paths.
    let mut stack: Vec<(usize, usize)> = vec![(s, 0)];
    let mut path: Vec<(usize, usize)> = Vec::new();
    while let Some(&mut (src, ref mut next)) = stack.last_mut() {
        if *next >= adjacency[src].len() {
            stack.pop();
            path.pop();
            continue;
        }
        let t = adjacency[src][*next];
        *next += 1;
        if seen[t] {
            continue;
        }
        seen[t] = true;
        path.push((src, t));
        match target_owner[t] {
            None => {
                for &(ps, pt) in &path {
                    target_owner[pt] = Some(ps);
                    source_partner[ps] = Some(pt);
                }
                return true;
            }
            Some(owner) => stack.push((owner, 0)),
        }
    }
    false
}

/// Given matchings `m1` saturating `big_a` and `m2` saturating `big_b`, builds
/// a single matching saturating both (`a index -> b index`).
///
/// M1 ∪ M2 splits into alternating paths and cycles. Cycles and paths with an
/// odd number of edges are covered completely by every other edge. A path
/// with an even number of edges has both ends on one side and must leave one
/// end bare: on side A the end without an M1 edge (so it is not in `big_a`),
/// on side B the end without an M2 edge.
fn mendelsohn_dulmage(
    na: usize,
    nb: usize,
    m1: &[(usize, usize)],
    m2: &[(usize, usize)],
) -> Vec<Option<usize>> {
    // partner[side][matching][index]; side 0 = A, 1 = B; matching 0 = M1, 1 = M2.
    let mut partner = [
        [vec![None; na], vec![None; na]],
        [vec![None; nb], vec![None; nb]],
    ];
    for &(i, j) in m1 {
        partner[0][0][i] = Some(j);
        partner[1][0][j] = Some(i);
    }
    for &(j, i) in m2 {
        partner[0][1][i] = Some(j);
        partner[1][1][j] = Some(i);
    }
    let degree = |side: usize, idx: usize| {
        partner[side][0][idx].is_some() as usize + partner[side][1][idx].is_some() as usize
    };

    let mut visited = [vec![false; na], vec![false; nb]];
    let mut result = vec![None; na];
    // Edge of a walk: (a index, b index, matching).
    let walk = |side: usize, idx: usize, visited: &mut [Vec<bool>; 2]| {
        let mut edges: Vec<(usize, usize, usize)> = Vec::new();
        let mut via = if partner[side][0][idx].is_some() {
            0
        } else {
            1
        };
        let (mut side, mut cur) = (side, idx);
        visited[side][cur] = true;
        while let Some(next) = partner[side][via][cur] {
            let (i, j) = if side == 0 { (cur, next) } else { (next, cur) };
            edges.push((i, j, via));
            side = 1 - side;
            cur = next;
            if visited[side][cur] {
                break;
            }
            visited[side][cur] = true;
            via = 1 - via;
        }
        edges
    };

    let mut take = |edges: &[(usize, usize, usize)], keep: &dyn Fn(usize, usize) -> bool| {
        for (k, &(i, j, via)) in edges.iter().enumerate() {
            if keep(k, via) {
                result[i] = Some(j);
            }
        }
    };

    for side in 0..2 {
        let count = if side == 0 { na } else { nb };
        for idx in 0..count {
            if visited[side][idx] || degree(side, idx) != 1 {
                continue;
            }
            let edges = walk(side, idx, &mut visited);
            if edges.len() % 2 == 1 {
                take(&edges, &|k, _| k % 2 == 0);
            } else {
                let wanted = side; // ends on A keep M1 edges, ends on B keep M2 edges
                take(&edges, &|_, via| via == wanted);
            }
        }
    }
    for idx in 0..na {
        if !visited[0][idx] && degree(0, idx) == 2 {
            let edges = walk(0, idx, &mut visited);
            take(&edges, &|_, via| via == 0);
        }
    }
    result
}

/// Approximate entropy Φᵐ(r) − Φᵐ⁺¹(r) with self-matches and Chebyshev distance.
pub fn approx_entropy(series: &TimeSeries, m: usize, r: f64) -> Result<f64> {
    if m < 1 {
        return Err(Error::param("m", "must be >= 1"));
    }
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::param("r", format!("{r} must be finite and > 0")));
    }
    let x = series.values();
    if x.len() <= m + 1 {
        return Err(Error::param(
            "series",
            format!("length {} too short for m = {m}", x.len()),
        ));
    }
    Ok(phi(x, m, r) - phi(x, m + 1, r))
}

fn phi(x: &[f64], m: usize, r: f64) -> f64 {
    let count = x.len() - m + 1;
    let mut total = 0.0;
    for i in 0..count {
        let close = (0..count)
            .filter(|&j| (0..m).all(|k| (x[i + k] - x[j + k]).abs() <= r))
            .count();
        total += (close as f64 / count as f64).ln();
    }
    total / count as f64
}

/// Sample standard deviation (n − 1 denominator).
pub fn sample_std(values: &[f64]) -> f64 {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
}

/// ApEn parameters: template length and tolerance as a fraction of the
/// original series' standard deviation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntropyParams {
    pub m: usize,
    pub r_factor: f64,
}

impl Default for EntropyParams {
    fn default() -> Self {
        Self {
            m: 2,
            r_factor: 0.2,
        }
    }
}

impl EntropyParams {
    /// Absolute tolerance for `reference`. A constant reference gets a tiny
    /// positive tolerance so that ApEn stays defined.
    pub fn tolerance(&self, reference: &TimeSeries) -> f64 {
        let r = self.r_factor * sample_std(reference.values());
        if r > 0.0 {
            r
        } else {
            f64::MIN_POSITIVE
        }
    }
}
