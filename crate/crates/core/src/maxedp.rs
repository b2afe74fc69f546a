//! MaxEDP in `K_n`: keep a maximum subgraph of degree at most
//! `2⌊n/6⌋ − 4` and realize it, plus the averaging upper bound on the
//! bundle size of regular demand graphs.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Ratio;
use petgraph::algo::maximum_matching;
use petgraph::graph::{NodeIndex, UnGraph};
use thiserror::Error;

use crate::base::BaseSpec;
use crate::complete::{degree_bound, realize_in_complete_with, RealizeError, RealizeOptions};
use crate::graph::{DemandGraph, EdgeId, Vertex};
use crate::realization::Realization;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgraphSolution {
    pub kept: BTreeSet<EdgeId>,
    pub caps: Vec<usize>,
}

impl SubgraphSolution {
    pub fn size(&self) -> usize {
        self.kept.len()
    }

    pub fn respects_caps(&self, d: &DemandGraph) -> bool {
        let mut deg = vec![0usize; self.caps.len()];
        for id in &self.kept {
            let Some(e) = d.edge(*id) else { return false };
            deg[e.u] += 1;
            deg[e.v] += 1;
        }
        deg.iter().zip(&self.caps).all(|(d, c)| d <= c)
    }

    /// `d` restricted to the kept edges, labels unchanged.
    pub fn subgraph(&self, d: &DemandGraph) -> DemandGraph {
        let mut out = DemandGraph::new(d.universe());
        for (id, e) in d.edges() {
            if self.kept.contains(&id) {
                out.add_demand(e.label, e.u, e.v).expect("labels of d are distinct");
            }
        }
        out
    }
}

/// A largest subgraph of `d` with `deg(v) <= caps[v]`.
///
/// Vertex `v` becomes `min(caps[v], deg(v))` copies; edge `uv` becomes a path
/// `a_e b_e` with `a_e` joined to every copy of `u` and `b_e` to every copy
/// of `v`. A maximum matching has size `e(d) + |D*|`, and `e` is kept exactly
/// when both `a_e` and `b_e` are matched to copies.
pub fn max_degree_constrained_subgraph(d: &DemandGraph, caps: &[usize]) -> SubgraphSolution {
    assert_eq!(caps.len(), d.universe(), "one cap per vertex");
    let mut gadget: UnGraph<(), ()> = UnGraph::new_undirected();
    let copies: Vec<Vec<NodeIndex>> = (0..d.universe())
        .map(|v| {
            let k = if d.is_alive(v) { caps[v].min(d.degree(v)) } else { 0 };
            (0..k).map(|_| gadget.add_node(())).collect()
        })
        .collect();
    let mut ends: Vec<(EdgeId, NodeIndex, NodeIndex)> = Vec::with_capacity(d.edge_count());
    for (id, e) in d.edges() {
        let (a, b) = (gadget.add_node(()), gadget.add_node(()));
        gadget.add_edge(a, b, ());
        for &c in &copies[e.u] {
            gadget.add_edge(a, c, ());
        }
        for &c in &copies[e.v] {
            gadget.add_edge(b, c, ());
        }
        ends.push((id, a, b));
    }
    let matching = maximum_matching(&gadget);
    let to_copy = |x: NodeIndex, y: NodeIndex| matching.mate(x).is_some_and(|m| m != y);
    let kept = ends
        .iter()
        .filter(|&&(_, a, b)| to_copy(a, b) && to_copy(b, a))
        .map(|&(id, _, _)| id)
        .collect();
    SubgraphSolution { kept, caps: caps.to_vec() }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MaxEdpError {
    #[error(transparent)]
    Realize(#[from] RealizeError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MaxEdpWarning {
    /// `2⌊n/6⌋ − 4 <= 0`: nothing is kept and the ratio guarantee is vacuous.
    DegenerateN { n: usize },
}

impl fmt::Display for MaxEdpWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MaxEdpWarning::DegenerateN { n } => write!(f, "guarantee vacuous (n<18), n={n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxEdpOutcome {
    pub solution: SubgraphSolution,
    pub realization: Realization,
    pub warning: Option<MaxEdpWarning>,
}

/// Keeps a maximum subgraph with uniform cap `2⌊n/6⌋ − 4` and realizes it.
pub fn approx_maxedp(d: &DemandGraph, n: usize) -> Result<MaxEdpOutcome, MaxEdpError> {
    let cap = degree_bound(n);
    let warning = (cap <= 0).then_some(MaxEdpWarning::DegenerateN { n });
    let mut out = approx_maxedp_with_cap(d, n, cap.max(0) as usize, &RealizeOptions::default())?;
    out.warning = warning;
    Ok(out)
}

/// As [`approx_maxedp`] with an explicit uniform cap. Caps above
/// `2⌊n/6⌋ − 4` are passed through and may fail in the realization step.
pub fn approx_maxedp_with_cap(
    d: &DemandGraph,
    n: usize,
    cap: usize,
    opts: &RealizeOptions,
) -> Result<MaxEdpOutcome, MaxEdpError> {
    if d.universe() != n {
        return Err(RealizeError::BaseMismatch { graph: d.universe(), base: n }.into());
    }
    let solution = max_degree_constrained_subgraph(d, &vec![cap; n]);
    let (realization, _) = realize_in_complete_with(&solution.subgraph(d), n, opts)?;
    Ok(MaxEdpOutcome { solution, realization, warning: None })
}

/// `(⌊n/6⌋ − 2) / ⌈(n−1)/2⌉`, the guaranteed fraction of an optimum.
pub fn guarantee_ratio(n: usize) -> Ratio<i64> {
    let n = n as i64;
    Ratio::new(n / 6 - 2, (n / 2).max(1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub len: u64,
    pub exempt: u64,
    pub avg_degree: Ratio<i128>,
    pub q_max: Ratio<i128>,
}

impl BoundReport {
    pub fn q_max_floor(&self) -> i128 {
        self.q_max.floor().to_integer()
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "len {}", self.len)?;
        writeln!(f, "exempt {}", self.exempt)?;
        writeln!(f, "avg_degree {}", self.avg_degree)?;
        writeln!(f, "q_max {}", self.q_max)?;
        write!(f, "q_max_floor {}", self.q_max_floor())
    }
}

/// `q <= d̄/ℓ + 2 e_0 (ℓ − 1) / |V|` for a `q`-regular demand graph whose
/// edges, apart from `e_0` of them, need paths of length at least `ℓ`.
pub fn pigeonhole_bound(base: &BaseSpec, len: u64, exempt: u64) -> BoundReport {
    assert!(len >= 1, "path length bound must be positive");
    let avg_degree = Ratio::from_integer(base.degree() as i128);
    let vertices = base.vertex_count() as i128;
    let (l, e0) = (len as i128, exempt as i128);
    let q_max = avg_degree / l + Ratio::new(2 * e0 * (l - 1), vertices);
    BoundReport { len, exempt, avg_degree, q_max }
}

/// Demands whose endpoints are not adjacent in `base` need paths of length
/// at least the base distance; for the grid that is the number of differing
/// coordinates. Returns the minimum over all demands (0 for an empty graph).
pub fn min_base_distance(d: &DemandGraph, base: &BaseSpec) -> u64 {
    let dist = |u: Vertex, v: Vertex| -> u64 {
        match *base {
            BaseSpec::Complete { .. } => 1,
            BaseSpec::Grid { t, d } => {
                let (mut a, mut b, mut k) = (u, v, 0);
                for _ in 0..d {
                    k += u64::from(a % t != b % t);
                    a /= t;
                    b /= t;
                }
                k
            }
        }
    };
    d.edges().map(|(_, e)| dist(e.u, e.v)).min().unwrap_or(0)
}
