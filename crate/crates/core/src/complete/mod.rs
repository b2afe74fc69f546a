//! Realization engines for complete base graphs.
//!
//! Every engine works on per-edge paths: a call receives the live edges of a
//! demand graph and returns, for each edge id, a path from the edge's `u` to
//! its `v`. Liftings are undone by concatenating the paths of the two halves.

mod driver;
mod edge_bounded;
mod lemma;
mod two_matching;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::factorization::FactorError;
use crate::graph::{Edge, EdgeId, GraphError, Lift, Vertex};
use crate::oracle::brute::OracleError;
use crate::oracle::verify::shortcut_walk;
use crate::realization::Path;

pub use driver::{degree_bound, pick_independent_triple, realize_in_complete, realize_in_complete_with};
pub use edge_bounded::realize_edge_bounded;
pub use lemma::{reduce_by_lifting, ReduceError, ReductionCertificate};
pub use two_matching::realize_two_matching;


pub type EdgePaths = BTreeMap<EdgeId, Path>;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RealizeOptions {
    /// Assert the reduction certificate after every reduction and check the
    /// composed paths at every recursion level.
    pub self_check: bool,
}

/// Counters reported by a self-checked run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RunStats {
    pub reductions: usize,
    pub certificates_checked: usize,
    pub levels_checked: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RealizeError {
    #[error("Δ={max_degree} > 2⌊n/6⌋−4={bound} (n={n})")]
    DegreeBoundExceeded { max_degree: usize, bound: i64, n: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("demand graph has {graph} vertices but the base graph has {base}")]
    BaseMismatch { graph: usize, base: usize },
    #[error("instance is not realizable")]
    Unrealizable,
    #[error("self-check failed: {0}")]
    SelfCheck(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Factor(#[from] FactorError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Reduce(#[from] ReduceError),
}

/// Rebuilds the paths of lifted edges from the paths of their halves, newest
/// lift first. Halves are removed from `paths`.
pub(crate) fn undo_lifts(lifts: &[Lift], paths: &mut EdgePaths) {
    for lift in lifts.iter().rev() {
        let first = paths.remove(&lift.halves[0]).expect("first half routed");
        let second = paths.remove(&lift.halves[1]).expect("second half routed");
        let mut walk = first;
        walk.extend_from_slice(&second[1..]);
        paths.insert(lift.edge, shortcut_walk(&walk));
    }
}

/// Routes edges leaving the graph with a deleted vertex along the base edge
/// itself.
pub(crate) fn route_direct(removed: &[(EdgeId, Edge)], paths: &mut EdgePaths) {
    for &(id, e) in removed {
        paths.insert(id, vec![e.u, e.v]);
    }
}

/// Checks that `paths` routes exactly `edges` by pairwise edge-disjoint
/// simple paths inside the complete graph on `live`.
pub(crate) fn check_edge_paths(
    edges: &[(EdgeId, Edge)],
    live: &BTreeSet<Vertex>,
    paths: &EdgePaths,
) -> Result<(), String> {
    if paths.len() != edges.len() {
        return Err(format!("{} paths for {} edges", paths.len(), edges.len()));
    }
    let mut used = BTreeSet::new();
    for &(id, e) in edges {
        let p = paths.get(&id).ok_or_else(|| format!("edge {id:?} has no path"))?;
        if p.len() < 2 || p[0] != e.u || p[p.len() - 1] != e.v {
            return Err(format!("edge {id:?} path {p:?} does not join {} and {}", e.u, e.v));
        }
        if p.iter().collect::<BTreeSet<_>>().len() != p.len() || p.iter().any(|v| !live.contains(v)) {
            return Err(format!("edge {id:?} path {p:?} is not a simple path of the base"));
        }
        for w in p.windows(2) {
            if !used.insert((w[0].min(w[1]), w[0].max(w[1]))) {
                return Err(format!("base edge {}-{} used twice", w[0], w[1]));
            }
        }
    }
    Ok(())
}
