//! Realizations (one base-graph path per demand label) and their recovery
//! from label-carrying path fragments.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::base::BaseSpec;
use crate::graph::{DemandGraph, EdgeId, Label, Vertex};
use crate::oracle::verify::shortcut_walk;

pub type Path = Vec<Vertex>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    pub base: BaseSpec,
    pub paths: BTreeMap<Label, Path>,
}

impl Realization {
    pub fn empty(base: BaseSpec) -> Self {
        Realization { base, paths: BTreeMap::new() }
    }

    /// Builds a realization from per-edge paths of `graph`, dropping padding
    /// labels. Each path must run from the edge's recorded `u` to its `v`.
    pub fn from_edge_paths(
        base: BaseSpec,
        graph: &DemandGraph,
        mut edge_paths: BTreeMap<EdgeId, Path>,
    ) -> Result<Self, AssemblyError> {
        let mut paths = BTreeMap::new();
        for (id, e) in graph.edges() {
            let path = edge_paths.remove(&id).ok_or(AssemblyError::MissingLabel(e.label))?;
            if !e.label.is_padding() {
                paths.insert(e.label, path);
            }
        }
        Ok(Realization { base, paths })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AssemblyError {
    #[error("no fragments reach from one endpoint of label {0:?} to the other")]
    Disconnected(Label),
    #[error("label {0:?} has no fragments")]
    MissingLabel(Label),
}

/// Stitches fragments into one simple path per demand label: the fragments of
/// a label are walked as a trail from the label's first endpoint (Hierholzer)
/// and the walk is then shortcut. Padding labels are dropped.
pub fn assemble_segments(
    base: BaseSpec,
    demands: &BTreeMap<Label, (Vertex, Vertex)>,
    segments: impl IntoIterator<Item = (Label, Path)>,
) -> Result<Realization, AssemblyError> {
    let mut classes: BTreeMap<Label, Vec<(Vertex, Vertex)>> = BTreeMap::new();
    for (label, path) in segments {
        let class = classes.entry(label).or_default();
        class.extend(path.windows(2).map(|w| (w[0], w[1])));
    }
    let mut paths = BTreeMap::new();
    for (&label, &(s, t)) in demands {
        if label.is_padding() {
            continue;
        }
        let edges = classes.get(&label).ok_or(AssemblyError::MissingLabel(label))?;
        let walk = euler_walk(edges, s, t)
            .or_else(|| any_path(edges, s, t))
            .ok_or(AssemblyError::Disconnected(label))?;
        paths.insert(label, shortcut_walk(&walk));
    }
    Ok(Realization { base, paths })
}

/// Hierholzer walk from `s`; `None` unless it uses every edge and ends at `t`.
fn euler_walk(edges: &[(Vertex, Vertex)], s: Vertex, t: Vertex) -> Option<Path> {
    let mut adj: BTreeMap<Vertex, Vec<(Vertex, usize)>> = BTreeMap::new();
    for (i, &(a, b)) in edges.iter().enumerate() {
        adj.entry(a).or_default().push((b, i));
        adj.entry(b).or_default().push((a, i));
    }
    let mut used = vec![false; edges.len()];
    let mut cursor: BTreeMap<Vertex, usize> = BTreeMap::new();
    let mut stack = vec![s];
    let mut walk = Vec::with_capacity(edges.len() + 1);
    while let Some(&x) = stack.last() {
        let list = adj.get(&x).map(Vec::as_slice).unwrap_or(&[]);
        let pos = cursor.entry(x).or_insert(0);
        while *pos < list.len() && used[list[*pos].1] {
            *pos += 1;
        }
        if *pos < list.len() {
            let (y, i) = list[*pos];
            used[i] = true;
            stack.push(y);
        } else {
            walk.push(x);
            stack.pop();
        }
    }
    walk.reverse();
    let complete = used.iter().all(|&u| u);
    (complete && walk.first() == Some(&s) && walk.last() == Some(&t)).then_some(walk)
}

fn any_path(edges: &[(Vertex, Vertex)], s: Vertex, t: Vertex) -> Option<Path> {
    let mut adj: BTreeMap<Vertex, BTreeSet<Vertex>> = BTreeMap::new();
    for &(a, b) in edges {
        adj.entry(a).or_default().insert(b);
        adj.entry(b).or_default().insert(a);
    }
    let mut parent: BTreeMap<Vertex, Vertex> = BTreeMap::from([(s, s)]);
    let mut queue = std::collections::VecDeque::from([s]);
    while let Some(x) = queue.pop_front() {
        if x == t {
            let mut path = vec![t];
            let mut cur = t;
            while cur != s {
                cur = parent[&cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for &y in adj.get(&x).into_iter().flatten() {
            if let std::collections::btree_map::Entry::Vacant(e) = parent.entry(y) {
                e.insert(x);
                queue.push_back(y);
            }
        }
    }
    None
}
