use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::graph::{DemandGraph, Label, Vertex};
use crate::realization::{Path, Realization};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ViolationKind {
    EndpointMismatch,
    NonEdge,
    RepeatedVertex,
    EdgeReuse,
    MissingLabel,
    ExtraLabel,
}

impl ViolationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationKind::EndpointMismatch => "endpoint-mismatch",
            ViolationKind::NonEdge => "non-edge",
            ViolationKind::RepeatedVertex => "repeated-vertex",
            ViolationKind::EdgeReuse => "edge-reuse",
            ViolationKind::MissingLabel => "missing-label",
            ViolationKind::ExtraLabel => "extra-label",
        }
    }
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub label: Label,
    pub kind: ViolationKind,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }
}

/// Checks `r` against the original (non-padding) demands registered in `d`:
/// one simple base-graph path per label joining the label's endpoints, with
/// no base edge used twice overall.
pub fn verify_realization(d: &DemandGraph, r: &Realization) -> VerificationReport {
    let demands: BTreeMap<Label, (Vertex, Vertex)> = d
        .demands()
        .iter()
        .filter(|(l, _)| !l.is_padding())
        .map(|(&l, &p)| (l, p))
        .collect();
    verify_against(&demands, r)
}

pub(crate) fn verify_against(
    demands: &BTreeMap<Label, (Vertex, Vertex)>,
    r: &Realization,
) -> VerificationReport {
    let mut violations = Vec::new();
    let mut push = |label, kind| violations.push(Violation { label, kind });
    for &label in demands.keys() {
        if !r.paths.contains_key(&label) {
            push(label, ViolationKind::MissingLabel);
        }
    }
    let mut used: BTreeSet<(Vertex, Vertex)> = BTreeSet::new();
    for (&label, path) in &r.paths {
        let Some(&(s, t)) = demands.get(&label) else {
            push(label, ViolationKind::ExtraLabel);
            continue;
        };
        let ends_ok = path.len() >= 2 && {
            let (a, b) = (path[0], path[path.len() - 1]);
            (a, b) == (s, t) || (a, b) == (t, s)
        };
        if !ends_ok {
            push(label, ViolationKind::EndpointMismatch);
        }
        let distinct: BTreeSet<_> = path.iter().collect();
        if distinct.len() != path.len() {
            push(label, ViolationKind::RepeatedVertex);
        }
        let mut non_edge = false;
        let mut reuse = false;
        for w in path.windows(2) {
            if !r.base.is_edge(w[0], w[1]) {
                non_edge = true;
            }
            if !used.insert((w[0].min(w[1]), w[0].max(w[1]))) {
                reuse = true;
            }
        }
        if non_edge {
            push(label, ViolationKind::NonEdge);
        }
        if reuse {
            push(label, ViolationKind::EdgeReuse);
        }
    }
    VerificationReport { violations }
}

/// Turns a walk into a simple path with the same endpoints whose edges are a
/// subset of the walk's edges: whenever a vertex reappears, the closed detour
/// since its first visit is cut out.
pub fn shortcut_walk(walk: &[Vertex]) -> Path {
    let mut path: Path = Vec::with_capacity(walk.len());
    let mut position: BTreeMap<Vertex, usize> = BTreeMap::new();
    for &v in walk {
        if let Some(&p) = position.get(&v) {
            for dropped in path.drain(p + 1..) {
                position.remove(&dropped);
            }
        } else {
            position.insert(v, path.len());
            path.push(v);
        }
    }
    path
}
