//! Loopless labeled demand multigraphs and the two rewriting primitives,
//! lifting and multiplicity resolution, that every realization engine
//! composes.
//!
//! Vertices are 0-based indices into a fixed universe `0..n`. A vertex can be
//! deleted (the reductions shrink the live vertex set); deleted vertices keep
//! their index but carry no edges. Edges get a stable [`EdgeId`] that is never
//! reused, so "lift this copy" is well defined among parallel edges.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

pub type Vertex = usize;

/// Labels at or above this value are reserved for padding demands.
pub const PADDING_BASE: u64 = 1 << 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(pub u64);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LabelKind {
    Original,
    Padding,
}

impl Label {
    pub fn kind(self) -> LabelKind {
        if self.0 >= PADDING_BASE {
            LabelKind::Padding
        } else {
            LabelKind::Original
        }
    }

    pub fn is_padding(self) -> bool {
        self.kind() == LabelKind::Padding
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub label: Label,
    pub u: Vertex,
    pub v: Vertex,
}

impl Edge {
    pub fn touches(&self, x: Vertex) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint opposite to `x`. `x` must be an endpoint.
    pub fn other(&self, x: Vertex) -> Vertex {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }

    pub fn pair(&self) -> (Vertex, Vertex) {
        (self.u.min(self.v), self.u.max(self.v))
    }
}

/// Record of one lifting: `edge` (u,v) was replaced by `halves[0]` = (u,target)
/// and `halves[1]` = (target,v), both carrying the label of `edge`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Lift {
    pub edge: EdgeId,
    pub target: Vertex,
    pub halves: [EdgeId; 2],
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge {0:?} is not present")]
    MissingEdge(EdgeId),
    #[error("vertex {0} is not a valid lifting target for this edge")]
    InvalidTarget(Vertex),
    #[error("vertex {0} is out of range or deleted")]
    BadVertex(Vertex),
    #[error("loop at vertex {0}")]
    Loop(Vertex),
    #[error("label {0:?} is already in use")]
    DuplicateLabel(Label),
    #[error("degree {degree} of vertex {vertex} exceeds {limit}; multiplicities cannot be resolved")]
    DegreeTooHigh {
        vertex: Vertex,
        degree: usize,
        limit: usize,
    },
    #[error("target degree {target} is odd or below the maximum degree {max_degree}")]
    TargetTooSmall { target: usize, max_degree: usize },
    #[error("cannot close the degree deficit of vertex {0}: no edge available to lift")]
    NoLiftableEdge(Vertex),
    #[error("edges of label {0:?} do not form a trail between its endpoints")]
    BrokenTrail(Label),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeStats {
    pub max_degree: usize,
    pub degree: Vec<usize>,
    pub gamma: Vec<usize>,
    pub multiplicity: Vec<usize>,
}

/// Outcome of [`DemandGraph::regularize_to_even_degree`].
#[derive(Clone, Debug, Default)]
pub struct Regularization {
    pub padding: Vec<EdgeId>,
    pub lifts: Vec<Lift>,
}

#[derive(Clone, Debug)]
pub struct DemandGraph {
    n: usize,
    alive: Vec<bool>,
    edges: Vec<Option<Edge>>,
    incidence: Vec<Vec<EdgeId>>,
    edge_count: usize,
    demands: BTreeMap<Label, (Vertex, Vertex)>,
    next_padding: u64,
}

impl DemandGraph {
    pub fn new(n: usize) -> Self {
        DemandGraph {
            n,
            alive: vec![true; n],
            edges: Vec::new(),
            incidence: vec![Vec::new(); n],
            edge_count: 0,
            demands: BTreeMap::new(),
            next_padding: PADDING_BASE,
        }
    }

    /// Builds a graph whose i-th pair gets label `i + 1`.
    pub fn from_pairs(n: usize, pairs: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut g = DemandGraph::new(n);
        for (i, &(u, v)) in pairs.iter().enumerate() {
            g.add_demand(Label(i as u64 + 1), u, v)?;
        }
        Ok(g)
    }

    /// Size of the vertex universe (deleted vertices included).
    pub fn universe(&self) -> usize {
        self.n
    }

    /// Number of live vertices.
    pub fn vertex_count(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.n).filter(move |&v| self.alive[v])
    }

    pub fn is_alive(&self, v: Vertex) -> bool {
        v < self.n && self.alive[v]
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn edge(&self, id: EdgeId) -> Option<Edge> {
        self.edges.get(id.0).copied().flatten()
    }

    pub fn contains_edge(&self, id: EdgeId) -> bool {
        self.edge(id).is_some()
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, Edge)> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter_map(|(i, e)| e.map(|e| (EdgeId(i), e)))
    }

    pub fn edge_ids(&self) -> Vec<EdgeId> {
        self.edges().map(|(id, _)| id).collect()
    }

    pub fn incident(&self, v: Vertex) -> &[EdgeId] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.incidence[v].len()
    }

    /// Neighbors of `v` with the (sorted) ids of the bundle joining them.
    pub fn neighbors(&self, v: Vertex) -> BTreeMap<Vertex, Vec<EdgeId>> {
        let mut out: BTreeMap<Vertex, Vec<EdgeId>> = BTreeMap::new();
        for &id in &self.incidence[v] {
            let e = self.edges[id.0].expect("incidence lists only live edges");
            out.entry(e.other(v)).or_default().push(id);
        }
        for ids in out.values_mut() {
            ids.sort();
        }
        out
    }

    pub fn is_adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.incidence[u]
            .iter()
            .any(|&id| self.edges[id.0].is_some_and(|e| e.other(u) == v))
    }

    pub fn multiplicity_between(&self, u: Vertex, v: Vertex) -> usize {
        self.incidence[u]
            .iter()
            .filter(|&&id| self.edges[id.0].is_some_and(|e| e.other(u) == v))
            .count()
    }

    pub fn gamma(&self, v: Vertex) -> usize {
        self.incidence[v]
            .iter()
            .map(|&id| self.edges[id.0].unwrap().other(v))
            .collect::<BTreeSet<_>>()
            .len()
    }

    pub fn multiplicity(&self, v: Vertex) -> usize {
        self.degree(v) - self.gamma(v)
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn degree_stats(&self) -> DegreeStats {
        let degree: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        let gamma: Vec<usize> = (0..self.n).map(|v| self.gamma(v)).collect();
        let multiplicity = degree.iter().zip(&gamma).map(|(d, g)| d - g).collect();
        DegreeStats {
            max_degree: degree.iter().copied().max().unwrap_or(0),
            degree,
            gamma,
            multiplicity,
        }
    }

    /// Original endpoints of every demand label registered in this graph.
    pub fn demands(&self) -> &BTreeMap<Label, (Vertex, Vertex)> {
        &self.demands
    }

    pub fn demand_endpoints(&self, label: Label) -> Option<(Vertex, Vertex)> {
        self.demands.get(&label).copied()
    }

    fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if self.is_alive(v) {
            Ok(())
        } else {
            Err(GraphError::BadVertex(v))
        }
    }

    fn insert(&mut self, e: Edge) -> EdgeId {
        let id = EdgeId(self.edges.len());
        self.edges.push(Some(e));
        self.incidence[e.u].push(id);
        self.incidence[e.v].push(id);
        self.edge_count += 1;
        id
    }

    /// Adds a demand edge with a fresh label, recording (u,v) as its pair.
    pub fn add_demand(&mut self, label: Label, u: Vertex, v: Vertex) -> Result<EdgeId, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::Loop(u));
        }
        if self.demands.contains_key(&label) {
            return Err(GraphError::DuplicateLabel(label));
        }
        self.demands.insert(label, (u, v));
        Ok(self.insert(Edge { label, u, v }))
    }

    /// Adds a demand edge carrying a fresh padding label.
    pub fn add_padding(&mut self, u: Vertex, v: Vertex) -> Result<EdgeId, GraphError> {
        let label = Label(self.next_padding);
        self.next_padding += 1;
        self.add_demand(label, u, v)
    }

    pub fn remove_edge(&mut self, id: EdgeId) -> Result<Edge, GraphError> {
        let e = self
            .edges
            .get_mut(id.0)
            .and_then(Option::take)
            .ok_or(GraphError::MissingEdge(id))?;
        for x in [e.u, e.v] {
            let list = &mut self.incidence[x];
            let pos = list.iter().position(|&i| i == id).expect("incidence in sync");
            list.swap_remove(pos);
        }
        self.edge_count -= 1;
        Ok(e)
    }

    /// Replaces edge (u,v) by (u,w),(w,v) with the same label.
    pub fn lift(&mut self, id: EdgeId, w: Vertex) -> Result<Lift, GraphError> {
        let e = self.edge(id).ok_or(GraphError::MissingEdge(id))?;
        if e.touches(w) || !self.is_alive(w) {
            return Err(GraphError::InvalidTarget(w));
        }
        self.remove_edge(id)?;
        let a = self.insert(Edge { label: e.label, u: e.u, v: w });
        let b = self.insert(Edge { label: e.label, u: w, v: e.v });
        Ok(Lift { edge: id, target: w, halves: [a, b] })
    }

    /// Resolves all multiplicities of `v` by lifting surplus parallel copies
    /// to non-neighbors, scanning candidates in ascending vertex order.
    pub fn resolve_multiplicities(&mut self, v: Vertex) -> Result<Vec<Lift>, GraphError> {
        let candidates: Vec<Vertex> = self.vertices().collect();
        let limit = self.vertex_count().saturating_sub(1);
        if self.degree(v) > limit {
            return Err(GraphError::DegreeTooHigh { vertex: v, degree: self.degree(v), limit });
        }
        self.resolve_multiplicities_using(v, &candidates)
    }

    /// Like [`resolve_multiplicities`](Self::resolve_multiplicities) but only
    /// lifts to vertices from `candidates`, taken in the given order. In each
    /// bundle the copy with the smallest id stays.
    pub fn resolve_multiplicities_using(
        &mut self,
        v: Vertex,
        candidates: &[Vertex],
    ) -> Result<Vec<Lift>, GraphError> {
        self.check_vertex(v)?;
        let bundles = self.neighbors(v);
        let surplus: Vec<EdgeId> = bundles.values().flat_map(|ids| ids[1..].iter().copied()).collect();
        let mut targets = candidates
            .iter()
            .copied()
            .filter(|&w| w != v && self.is_alive(w) && !bundles.contains_key(&w))
            .collect::<Vec<_>>()
            .into_iter();
        let mut lifts = Vec::with_capacity(surplus.len());
        for id in surplus {
            let w = targets.next().ok_or(GraphError::DegreeTooHigh {
                vertex: v,
                degree: self.degree(v),
                limit: self.vertex_count().saturating_sub(1),
            })?;
            lifts.push(self.lift(id, w)?);
        }
        Ok(lifts)
    }

    /// Makes every live vertex have degree exactly `target`: deficient
    /// vertices are paired by padding edges (largest deficits first); a lone
    /// remaining deficit is closed by lifting non-incident edges to it.
    pub fn regularize_to_even_degree(&mut self, target: usize) -> Result<Regularization, GraphError> {
        let max_degree = self.max_degree();
        if target % 2 == 1 || target < max_degree {
            return Err(GraphError::TargetTooSmall { target, max_degree });
        }
        let mut out = Regularization::default();
        loop {
            let mut deficient: Vec<(usize, Vertex)> = self
                .vertices()
                .filter(|&v| self.degree(v) < target)
                .map(|v| (target - self.degree(v), v))
                .collect();
            deficient.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
            match deficient.as_slice() {
                [] => break,
                [(_, v)] => {
                    let v = *v;
                    let id = self
                        .edges()
                        .filter(|(_, e)| !e.touches(v))
                        .min_by_key(|(id, e)| (self.is_adjacent(e.u, v) || self.is_adjacent(e.v, v), *id))
                        .map(|(id, _)| id)
                        .ok_or(GraphError::NoLiftableEdge(v))?;
                    out.lifts.push(self.lift(id, v)?);
                }
                [(_, a), (_, b), ..] => {
                    let (a, b) = (*a, *b);
                    out.padding.push(self.add_padding(a.min(b), a.max(b))?);
                }
            }
        }
        Ok(out)
    }

    /// Deletes `v` together with its incident edges, which are returned.
    pub fn delete_vertex(&mut self, v: Vertex) -> Result<Vec<(EdgeId, Edge)>, GraphError> {
        self.check_vertex(v)?;
        let mut ids = self.incidence[v].clone();
        ids.sort();
        let mut removed = Vec::with_capacity(ids.len());
        for id in ids {
            removed.push((id, self.remove_edge(id)?));
        }
        self.alive[v] = false;
        Ok(removed)
    }

    /// Edges currently carrying `label`.
    pub fn label_class(&self, label: Label) -> Vec<(EdgeId, Edge)> {
        self.edges().filter(|(_, e)| e.label == label).collect()
    }

    /// Checks that for every registered label the edges carrying it form a
    /// connected trail between the label's original endpoints.
    pub fn check_label_trails(&self) -> Result<(), GraphError> {
        let mut classes: BTreeMap<Label, Vec<Edge>> = BTreeMap::new();
        for (_, e) in self.edges() {
            classes.entry(e.label).or_default().push(e);
        }
        for (&label, &(s, t)) in &self.demands {
            let class = classes.remove(&label).unwrap_or_default();
            if !is_trail_between(&class, s, t) {
                return Err(GraphError::BrokenTrail(label));
            }
        }
        if let Some((&label, _)) = classes.iter().next() {
            return Err(GraphError::BrokenTrail(label));
        }
        Ok(())
    }
}

/// Parity plus connectivity test: `edges` admit an Euler trail from `s` to `t`.
pub(crate) fn is_trail_between(edges: &[Edge], s: Vertex, t: Vertex) -> bool {
    if edges.is_empty() || s == t {
        return false;
    }
    let mut deg: BTreeMap<Vertex, usize> = BTreeMap::new();
    let mut adj: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    for e in edges {
        *deg.entry(e.u).or_default() += 1;
        *deg.entry(e.v).or_default() += 1;
        adj.entry(e.u).or_default().push(e.v);
        adj.entry(e.v).or_default().push(e.u);
    }
    for (&x, &d) in &deg {
        let odd = d % 2 == 1;
        if odd != (x == s || x == t) {
            return false;
        }
    }
    if !deg.contains_key(&s) || !deg.contains_key(&t) {
        return false;
    }
    let mut seen = BTreeSet::from([s]);
    let mut queue = VecDeque::from([s]);
    while let Some(x) = queue.pop_front() {
        for &y in &adj[&x] {
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen.len() == deg.len()
}
