//! Realizations in the complete grid `K_t^d`.
//!
//! Vertex `v` lies in column `v mod t^(d-1)` (its first `d - 1` coordinates)
//! and layer `v / t^(d-1) + 1` (its last coordinate). Each demand joining
//! two columns is split into column-layer-column pieces; the pieces inside
//! each column form a `K_t` instance and those inside each layer a
//! `K_t^(d-1)` instance.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::base::BaseSpec;
use crate::complete::{realize_in_complete_with, RealizeError, RealizeOptions, RunStats};
use crate::factorization::{two_factorization, FactorError};
use crate::graph::{DemandGraph, EdgeId, GraphError, Label, Vertex};
use crate::realization::{assemble_segments, AssemblyError, Path, Realization};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GridError {
    #[error("Δ={max_degree} > 2⌊t/12⌋−2={bound} (t={t})")]
    DegreeBoundExceeded { max_degree: usize, bound: i64, t: usize },
    #[error("base graph is not a grid matching the demand graph")]
    NotGrid,
    #[error("vertices {0} and {1} lie in the same column")]
    SameColumn(Vertex, Vertex),
    #[error("degree claim violated: {0}")]
    DegreeClaim(String),
    #[error(transparent)]
    Realize(#[from] RealizeError),
    #[error(transparent)]
    Factor(#[from] FactorError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Assembly(#[from] AssemblyError),
}

/// `2⌊t/12⌋ − 2`.
pub fn grid_degree_bound(t: usize) -> i64 {
    2 * (t as i64 / 12) - 2
}

/// Layer pieces and column pieces of a demand graph in `K_t^d`, `d >= 2`.
#[derive(Clone, Debug)]
pub struct GridDecomposition {
    pub q: usize,
    /// layer (1-based) carrying each cross demand
    pub layer_of: BTreeMap<Label, usize>,
    /// `layers[k - 1]` lives on `K_t^(d-1)`, vertices indexed by column
    pub layers: Vec<DemandGraph>,
    /// `columns[c]` lives on `K_t`, vertices indexed by layer - 1
    pub columns: Vec<DemandGraph>,
}

fn params(base: &BaseSpec) -> Result<(usize, usize, usize), GridError> {
    match *base {
        BaseSpec::Grid { t, d } => Ok((t, d, t.pow(d as u32 - 1))),
        BaseSpec::Complete { .. } => Err(GridError::NotGrid),
    }
}

/// The pieces replacing a cross demand `uv` routed through layer `k`
/// (1-based): `(a,i)(a,k)`, `(a,k)(b,k)`, `(b,k)(b,j)`, without the
/// degenerate ones.
pub fn split_cross_edge(base: &BaseSpec, u: Vertex, v: Vertex, k: usize) -> Result<Vec<(Vertex, Vertex)>, GridError> {
    let (t, _, cols) = params(base)?;
    if u >= base.vertex_count() || v >= base.vertex_count() || k == 0 || k > t {
        return Err(GridError::NotGrid);
    }
    let (a, b) = (u % cols, v % cols);
    if a == b {
        return Err(GridError::SameColumn(u, v));
    }
    let (u2, v2) = (a + (k - 1) * cols, b + (k - 1) * cols);
    let mut out = Vec::with_capacity(3);
    if u != u2 {
        out.push((u, u2));
    }
    out.push((u2, v2));
    if v2 != v {
        out.push((v2, v));
    }
    Ok(out)
}

/// Splits the cross demands of `d` among the layers through a Petersen
/// 2-factorization of their column projection.
pub fn decompose(d: &DemandGraph, base: &BaseSpec) -> Result<GridDecomposition, GridError> {
    let (t, dim, cols) = params(base)?;
    if dim < 2 || d.universe() != base.vertex_count() {
        return Err(GridError::NotGrid);
    }
    let q = grid_degree_bound(t).max(0) as usize;
    let mut layers: Vec<DemandGraph> = (0..t).map(|_| DemandGraph::new(cols)).collect();
    let mut columns: Vec<DemandGraph> = (0..cols).map(|_| DemandGraph::new(t)).collect();
    let mut layer_of = BTreeMap::new();

    let mut cross: Vec<(Label, Vertex, Vertex)> = Vec::new();
    for (_, e) in d.edges() {
        if e.u % cols == e.v % cols {
            columns[e.u % cols].add_demand(e.label, e.u / cols, e.v / cols)?;
        } else {
            cross.push((e.label, e.u, e.v));
        }
    }
    if !cross.is_empty() {
        let projection: Vec<(Vertex, Vertex)> = cross.iter().map(|&(_, u, v)| (u % cols, v % cols)).collect();
        let groups = group_projection(cols, &projection, t, q)?;
        for (&(label, u, v), &k) in cross.iter().zip(&groups) {
            layer_of.insert(label, k);
            for (a, b) in split_cross_edge(base, u, v, k)? {
                if a % cols == b % cols {
                    columns[a % cols].add_demand(label, a / cols, b / cols)?;
                } else {
                    layers[k - 1].add_demand(label, a % cols, b % cols)?;
                }
            }
        }
    }
    for (k, layer) in layers.iter().enumerate() {
        if layer.max_degree() > q {
            return Err(GridError::DegreeClaim(format!("layer {} has Δ={} > q={q}", k + 1, layer.max_degree())));
        }
    }
    for (c, column) in columns.iter().enumerate() {
        if column.max_degree() > 2 * q {
            return Err(GridError::DegreeClaim(format!("column {c} has Δ={} > 2q={}", column.max_degree(), 2 * q)));
        }
    }
    Ok(GridDecomposition { q, layer_of, layers, columns })
}

/// Assigns a layer (1-based) to every edge of the projection so that each
/// layer receives a subgraph of maximum degree at most `q`: pad to a
/// `tq`-regular multigraph, 2-factorize, and give layer `k` the `k`-th run
/// of `q/2` factors.
fn group_projection(cols: usize, edges: &[(Vertex, Vertex)], t: usize, q: usize) -> Result<Vec<usize>, GridError> {
    let target = t * q;
    let mut deg = vec![0usize; cols];
    for &(a, b) in edges {
        deg[a] += 1;
        deg[b] += 1;
    }
    if deg.iter().any(|&x| x > target) || q == 0 {
        return Err(GridError::DegreeClaim(format!("projection has Δ > tq={target}")));
    }
    let mut dummies = Vec::new();
    loop {
        let mut open: Vec<(usize, Vertex)> = (0..cols).filter(|&v| deg[v] < target).map(|v| (target - deg[v], v)).collect();
        open.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
        match open[..] {
            [] => break,
            [_] => break,
            [(_, a), (_, b), ..] => {
                dummies.push((a, b));
                deg[a] += 1;
                deg[b] += 1;
            }
        }
    }
    // a single vertex left short: take two copies and join the copies of it
    let lone = (0..cols).find(|&v| deg[v] < target);
    let copies = if lone.is_some() { 2 } else { 1 };
    let mut h = DemandGraph::new(cols * copies);
    let mut ids: Vec<EdgeId> = Vec::with_capacity(edges.len());
    for c in 0..copies {
        let shift = c * cols;
        for (i, &(a, b)) in edges.iter().enumerate() {
            let id = h.add_demand(Label((c * edges.len() + i) as u64 + 1), a + shift, b + shift)?;
            if c == 0 {
                ids.push(id);
            }
        }
        for &(a, b) in &dummies {
            h.add_padding(a + shift, b + shift)?;
        }
    }
    if let Some(v) = lone {
        for _ in deg[v]..target {
            h.add_padding(v, v + cols)?;
        }
    }
    let factors = two_factorization(&h)?.factors;
    let per_layer = q / 2;
    let mut layer_of_edge: BTreeMap<EdgeId, usize> = BTreeMap::new();
    for (f, factor) in factors.iter().enumerate() {
        for &id in factor {
            layer_of_edge.insert(id, f / per_layer + 1);
        }
    }
    Ok(ids.iter().map(|id| layer_of_edge[id]).collect())
}

/// Realizes `d` in `K_t^d` when `Δ(d) ≤ 2⌊t/12⌋ − 2`.
pub fn realize_in_grid(d: &DemandGraph, base: &BaseSpec) -> Result<Realization, GridError> {
    realize_in_grid_with(d, base, &RealizeOptions::default()).map(|(r, _)| r)
}

pub fn realize_in_grid_with(
    d: &DemandGraph,
    base: &BaseSpec,
    opts: &RealizeOptions,
) -> Result<(Realization, RunStats), GridError> {
    let (t, dim, cols) = params(base)?;
    if d.universe() != base.vertex_count() {
        return Err(GridError::NotGrid);
    }
    let mut stats = RunStats::default();
    if d.edge_count() == 0 {
        return Ok((Realization::empty(*base), stats));
    }
    let bound = grid_degree_bound(t);
    if d.max_degree() as i64 > bound {
        return Err(GridError::DegreeBoundExceeded { max_degree: d.max_degree(), bound, t });
    }
    if dim == 1 {
        let (mut r, s) = realize_in_complete_with(d, t, opts)?;
        r.base = *base;
        return Ok((r, s));
    }
    let dec = decompose(d, base)?;
    let mut segments: Vec<(Label, Path)> = Vec::new();
    for (c, column) in dec.columns.iter().enumerate() {
        let (r, s) = realize_in_complete_with(column, t, opts)?;
        add_stats(&mut stats, s);
        segments.extend(r.paths.into_iter().map(|(l, p)| (l, p.into_iter().map(|k| c + k * cols).collect())));
    }
    let layer_base = BaseSpec::Grid { t, d: dim - 1 };
    for (k, layer) in dec.layers.iter().enumerate() {
        let (r, s) = realize_in_grid_with(layer, &layer_base, opts)?;
        add_stats(&mut stats, s);
        segments.extend(r.paths.into_iter().map(|(l, p)| (l, p.into_iter().map(|a| a + k * cols).collect())));
    }
    let r = assemble_segments(*base, d.demands(), segments)?;
    Ok((r, stats))
}

fn add_stats(total: &mut RunStats, s: RunStats) {
    total.reductions += s.reductions;
    total.certificates_checked += s.certificates_checked;
    total.levels_checked += s.levels_checked;
}
