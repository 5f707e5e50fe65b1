//! 0-dimensional persistence of the lower-star filtration of a series.
//!
//! Extrema are swept in ascending value (ties by ascending index). Every local
//! minimum opens a sublevel-set component; a local maximum that joins two
//! components closes the one whose minimum is larger, which yields one
//! birth/death pair. Non-extremal samples never change the component structure,
//! so the sweep runs over the collapsed extrema only.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::series::{classify_values, ExtremumKind, ExtremumRecord, TimeSeries};

/// How the two ends of the series take part in the sweep.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundaryRule {
    /// Plain sublevel-set persistence of the path. Boundary maxima are regular
    /// points and the global minimum is the essential component. This is the
    /// rule under which simplification reproduces its retained pairs exactly.
    #[default]
    Standard,
    /// Each boundary maximum is attached to a virtual vertex at −∞, so it
    /// closes the component of its neighbouring minimum. Boundary minima are
    /// attached to +∞, which never changes the sweep. Pairs whose birth is a
    /// virtual vertex are dropped from the report.
    VirtualSinks,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtremaPair {
    pub birth_index: usize,
    pub death_index: usize,
    pub birth_value: f64,
    pub death_value: f64,
    pub persistence: f64,
}

impl ExtremaPair {
    fn new(birth: &ExtremumRecord, death: &ExtremumRecord) -> Self {
        Self {
            birth_index: birth.index,
            death_index: death.index,
            birth_value: birth.value,
            death_value: death.value,
            persistence: death.value - birth.value,
        }
    }

    /// Index interval covered by the pair, smaller end first.
    pub fn span(&self) -> (usize, usize) {
        (
            self.birth_index.min(self.death_index),
            self.birth_index.max(self.death_index),
        )
    }
}

/// Ascending persistence, ties by ascending birth index.
pub fn pair_order(a: &ExtremaPair, b: &ExtremaPair) -> Ordering {
    a.persistence
        .total_cmp(&b.persistence)
        .then(a.birth_index.cmp(&b.birth_index))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PersistenceDiagram {
    pairs: Vec<ExtremaPair>,
    essential_min_index: usize,
}

impl PersistenceDiagram {
    pub fn pairs(&self) -> &[ExtremaPair] {
        &self.pairs
    }

    /// Leftmost index of the global minimum.
    pub fn essential_min_index(&self) -> usize {
        self.essential_min_index
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NodeKind {
    Leaf,
    Merge,
    Root,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MergeNode {
    pub id: usize,
    pub f_value: f64,
    /// `None` for virtual vertices and for the root at +∞.
    pub sample_index: Option<usize>,
    pub kind: NodeKind,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    /// For merge nodes: the leaf of the minimum that dies here.
    pub paired_leaf: Option<usize>,
}

/// Merge tree of the sublevel-set components; edges point toward larger values.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct MergeTree {
    nodes: Vec<MergeNode>,
}

impl MergeTree {
    pub fn nodes(&self) -> &[MergeNode] {
        &self.nodes
    }

    pub fn count(&self, kind: NodeKind) -> usize {
        self.nodes.iter().filter(|n| n.kind == kind).count()
    }

    pub fn root(&self) -> Option<&MergeNode> {
        self.nodes.iter().find(|n| n.kind == NodeKind::Root)
    }

    fn push(&mut self, f_value: f64, sample_index: Option<usize>, kind: NodeKind) -> usize {
        let id = self.nodes.len();
        self.nodes.push(MergeNode {
            id,
            f_value,
            sample_index,
            kind,
            parent: None,
            children: Vec::new(),
            paired_leaf: None,
        });
        id
    }

    fn link(&mut self, child: usize, parent: usize) {
        self.nodes[child].parent = Some(parent);
        self.nodes[parent].children.push(child);
    }
}

/// Sweep key of a vertex: value, then position. Virtual vertices sit just
/// outside the index range.
#[derive(Debug, Clone, Copy)]
struct SweepKey {
    value: f64,
    position: i64,
}

impl SweepKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.value
            .total_cmp(&other.value)
            .then(self.position.cmp(&other.position))
    }
}

#[derive(Debug, Clone, Copy)]
struct Component {
    min_key: SweepKey,
    /// Extremum slot of the minimum, or `None` for a virtual sink.
    min_slot: Option<usize>,
    leaf: usize,
    top: usize,
}

/// Union-find with path halving and union by size.
struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> usize {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return a;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        a
    }
}

/// Persistence pairs and merge tree under [`BoundaryRule::Standard`].
pub fn compute_persistence(series: &TimeSeries) -> (PersistenceDiagram, MergeTree) {
    compute_persistence_with(series, BoundaryRule::Standard)
}

pub fn compute_persistence_with(
    series: &TimeSeries,
    rule: BoundaryRule,
) -> (PersistenceDiagram, MergeTree) {
    let extrema = classify_values(series.values());
    persistence_of_extrema(&extrema, series.len(), rule)
}

/// Validates `values` and returns the diagram, discarding the tree.
pub fn diagram_of(values: &[f64]) -> Result<PersistenceDiagram> {
    let series = TimeSeries::new(values.to_vec())?;
    Ok(compute_persistence(&series).0)
}

pub(crate) fn persistence_of_extrema(
    extrema: &[ExtremumRecord],
    len: usize,
    rule: BoundaryRule,
) -> (PersistenceDiagram, MergeTree) {
    let k = extrema.len();
    let key = |slot: usize| SweepKey {
        value: extrema[slot].value,
        position: extrema[slot].index as i64,
    };

    let essential_min_index = extrema
        .iter()
        .enumerate()
        .filter(|(_, r)| r.kind == ExtremumKind::LocalMin)
        .min_by(|(a, _), (b, _)| key(*a).cmp(&key(*b)))
        .map(|(_, r)| r.index)
        .unwrap_or(0);

    let mut tree = MergeTree::default();
    let mut sets = DisjointSets::new(k + 2);
    let mut components: Vec<Option<Component>> = vec![None; k + 2];
    let mut pairs = Vec::new();

    // Slots k and k + 1 hold the left and right virtual sinks.
    let sink_slot = |slot: usize| -> Option<usize> {
        if rule != BoundaryRule::VirtualSinks || k < 2 {
            return None;
        }
        let rec = &extrema[slot];
        match (rec.kind, slot) {
            (ExtremumKind::LocalMax, 0) => Some(k),
            (ExtremumKind::LocalMax, s) if s == k - 1 => Some(k + 1),
            _ => None,
        }
    };
    if rule == BoundaryRule::VirtualSinks && k >= 2 {
        for (slot, position) in [(k, -1i64), (k + 1, len as i64)] {
            let has_sink = (0..k).any(|s| sink_slot(s) == Some(slot));
            if has_sink {
                let leaf = tree.push(f64::NEG_INFINITY, None, NodeKind::Leaf);
                components[slot] = Some(Component {
                    min_key: SweepKey {
                        value: f64::NEG_INFINITY,
                        position,
                    },
                    min_slot: None,
                    leaf,
                    top: leaf,
                });
            }
        }
    }

    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| key(a).cmp(&key(b)));

    for slot in order {
        let rec = &extrema[slot];
        match rec.kind {
            ExtremumKind::LocalMin => {
                let leaf = tree.push(rec.value, Some(rec.index), NodeKind::Leaf);
                components[slot] = Some(Component {
                    min_key: key(slot),
                    min_slot: Some(slot),
                    leaf,
                    top: leaf,
                });
            }
            ExtremumKind::LocalMax => {
                let mut neighbours: Vec<usize> = Vec::with_capacity(2);
                if slot > 0 {
                    neighbours.push(slot - 1);
                }
                if slot + 1 < k {
                    neighbours.push(slot + 1);
                }
                neighbours.extend(sink_slot(slot));
                let mut roots: Vec<usize> = neighbours.iter().map(|&s| sets.find(s)).collect();
                roots.dedup();
                match roots[..] {
                    [a, b] if a != b => {
                        let ca = components[a].expect("neighbour component exists");
                        let cb = components[b].expect("neighbour component exists");
                        let (elder, younger) = if ca.min_key.cmp(&cb.min_key) == Ordering::Greater {
                            (cb, ca)
                        } else {
                            (ca, cb)
                        };
                        let node = tree.push(rec.value, Some(rec.index), NodeKind::Merge);
                        tree.link(elder.top, node);
                        tree.link(younger.top, node);
                        tree.nodes[node].paired_leaf = Some(younger.leaf);
                        if let Some(birth_slot) = younger.min_slot {
                            pairs.push(ExtremaPair::new(&extrema[birth_slot], rec));
                        }
                        let root = sets.union(a, b);
                        let root = sets.union(root, slot);
                        components[root] = Some(Component { top: node, ..elder });
                    }
                    _ => {
                        // A boundary maximum with a single neighbour only extends a component.
                        let component = components[roots[0]];
                        let root = sets.union(roots[0], slot);
                        components[root] = component;
                    }
                }
            }
        }
    }

    if k > 0 {
        let survivor = sets.find(
            (0..k)
                .find(|&s| extrema[s].kind == ExtremumKind::LocalMin)
                .unwrap_or(0),
        );
        if let Some(c) = components[survivor] {
            let root = tree.push(f64::INFINITY, None, NodeKind::Root);
            tree.link(c.top, root);
        }
    }

    pairs.sort_by(pair_order);
    (
        PersistenceDiagram {
            pairs,
            essential_min_index,
        },
        tree,
    )
}
