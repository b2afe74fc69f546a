use std::collections::BTreeSet;

use thiserror::Error;

use super::{route_direct, undo_lifts, EdgePaths};
use crate::factorization::{balanced_lifting_coloring, FactorError, TwoMatching};
use crate::graph::{DemandGraph, Edge, EdgeId, GraphError, Lift, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReduceError {
    #[error("reduction precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("lifting coloring failed: {0}")]
    ColoringFailed(FactorError),
    #[error("no free lifting target left for vertex {0}")]
    OutOfTargets(Vertex),
    #[error("edges left at the removed vertices are not simple")]
    NotSimple,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Record of one reduction: the removed triple, the liftings in order, and
/// the edges that left the graph with the triple (each realized by the base
/// edge it spans).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionCertificate {
    pub removed: [Vertex; 3],
    pub lifts: Vec<Lift>,
    pub deleted: Vec<(EdgeId, Edge)>,
}

impl ReductionCertificate {
    /// Turns paths for every edge of `H` into paths for every edge of `D`.
    pub fn compose(&self, paths: &mut EdgePaths) {
        route_direct(&self.deleted, paths);
        undo_lifts(&self.lifts, paths);
    }

    /// Checks the properties of `h` (the reduced graph) relative to `d`
    /// (the graph before reduction). Edges created next to `b` are allowed
    /// only through liftings of edges already at `b`; no lift targets `b`.
    pub fn check(&self, d: &DemandGraph, h: &DemandGraph, f: &TwoMatching, b: &[Vertex]) -> Result<(), String> {
        let x = self.removed;
        let expected: BTreeSet<Vertex> = d.vertices().filter(|v| !x.contains(v)).collect();
        let actual: BTreeSet<Vertex> = h.vertices().collect();
        if expected != actual {
            return Err("vertex set of H is not V(D) minus X".into());
        }
        for (id, e) in d.edges() {
            if !e.touches(x[0]) && !e.touches(x[1]) && !e.touches(x[2]) && !f.edges.contains(&id) && h.edge(id) != Some(e)
            {
                return Err(format!("edge {id:?} of D - X - F is missing from H"));
            }
        }
        if let Some(l) = self.lifts.iter().find(|l| b.contains(&l.target)) {
            return Err(format!("lift of {:?} targets protected vertex {}", l.edge, l.target));
        }
        for (id, e) in h.edges() {
            if b.contains(&e.u) && b.contains(&e.v) && d.edge(id) != Some(e) {
                return Err(format!("edge {id:?} inside B is new"));
            }
        }
        for v in h.vertices() {
            let limit = d.degree(v) + usize::from(!b.contains(&v));
            if h.degree(v) + f.degree(d, v) > limit {
                return Err(format!("degree of {v} in H is {} > {}", h.degree(v), limit - f.degree(d, v)));
            }
        }
        Ok(())
    }
}

/// Lifts the 2-matching `f` onto the independent triple `x` guided by a
/// balanced lifting coloring, resolves the multiplicities of `x` away from
/// `b`, and deletes `x`. `d` becomes the reduced graph `H`.
pub fn reduce_by_lifting(
    d: &mut DemandGraph,
    x: [Vertex; 3],
    b: &[Vertex],
    f: &TwoMatching,
) -> Result<ReductionCertificate, ReduceError> {
    check_preconditions(d, x, b, f)?;
    let domain: Vec<Vertex> = d.vertices().collect();
    // pins (x3, x1, x2) give c(x_i) = i + 1 (mod 3)
    let coloring = balanced_lifting_coloring(d, f, &domain, [x[2], x[0], x[1]]).map_err(ReduceError::ColoringFailed)?;

    let mut lifts = Vec::new();
    // edges at X that stem from F: lifted halves and F-edges left in place
    let mut from_f: BTreeSet<EdgeId> = BTreeSet::new();
    for &id in &f.edges {
        let c = coloring.edge[&id];
        let target = x[c as usize - 1];
        let e = d.edge(id).expect("F is a subgraph of D");
        if e.touches(target) {
            from_f.insert(id);
        } else {
            let lift = d.lift(id, target)?;
            from_f.extend(lift.halves);
            lifts.push(lift);
        }
    }

    for (i, &xi) in x.iter().enumerate() {
        let color = i as u8 + 1;
        let targets: Vec<Vertex> = domain
            .iter()
            .copied()
            .filter(|y| !x.contains(y) && !b.contains(y) && coloring.vertex[y] == color)
            .collect();
        let mut next = 0;
        for (_, bundle) in d.neighbors(xi) {
            let keep = bundle.iter().copied().find(|id| from_f.contains(id)).unwrap_or(bundle[0]);
            for &id in bundle.iter().filter(|&&id| id != keep) {
                debug_assert!(!from_f.contains(&id), "at most one F-derived edge per bundle");
                while next < targets.len() && d.is_adjacent(xi, targets[next]) {
                    next += 1;
                }
                let &y = targets.get(next).ok_or(ReduceError::OutOfTargets(xi))?;
                lifts.push(d.lift(id, y)?);
                next += 1;
            }
        }
    }

    let mut deleted = Vec::new();
    for &xi in &x {
        deleted.extend(d.delete_vertex(xi)?);
    }
    let mut pairs = BTreeSet::new();
    if !deleted.iter().all(|(_, e)| pairs.insert((e.u.min(e.v), e.u.max(e.v)))) {
        return Err(ReduceError::NotSimple);
    }
    Ok(ReductionCertificate { removed: x, lifts, deleted })
}

fn check_preconditions(d: &DemandGraph, x: [Vertex; 3], b: &[Vertex], f: &TwoMatching) -> Result<(), ReduceError> {
    let fail = |s: String| Err(ReduceError::PreconditionViolated(s));
    let n = d.vertex_count() as i64;
    if x[0] == x[1] || x[0] == x[2] || x[1] == x[2] || x.iter().any(|&v| !d.is_alive(v)) {
        return fail(format!("X = {x:?} is not a set of three live vertices"));
    }
    if b.len() > 3 || b.iter().any(|v| x.contains(v) || !d.is_alive(*v)) {
        return fail(format!("B = {b:?} is not a set of at most three live vertices outside X"));
    }
    let delta = d.max_degree() as i64;
    if delta > n / 3 - 4 {
        return fail(format!("Δ={delta} > ⌊n/3⌋−4={} (n={n})", n / 3 - 4));
    }
    if d.is_adjacent(x[0], x[1]) || d.is_adjacent(x[0], x[2]) || d.is_adjacent(x[1], x[2]) {
        return fail("X induces an edge".into());
    }
    if !f.is_two_matching_of(d) {
        return fail("F is not a 2-matching of D".into());
    }
    for &xi in &x {
        if f.degree(d, xi) != 2 && d.degree(xi) as i64 > n / 3 - 5 {
            return fail(format!("vertex {xi} has F-degree below 2 and degree {} > ⌊n/3⌋−5", d.degree(xi)));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complete::check_edge_paths;

    fn run(d: &DemandGraph, x: [Vertex; 3], b: &[Vertex], f: &TwoMatching) -> (DemandGraph, ReductionCertificate) {
        let mut h = d.clone();
        let cert = reduce_by_lifting(&mut h, x, b, f).unwrap();
        cert.check(d, &h, f, b).unwrap();
        (h, cert)
    }

    /// Routes H greedily when it is a matching and composes back.
    fn compose_matching(d: &DemandGraph, h: &DemandGraph, cert: &ReductionCertificate) {
        assert!(h.max_degree() <= 1);
        let mut paths: EdgePaths = h.edges().map(|(id, e)| (id, vec![e.u, e.v])).collect();
        cert.compose(&mut paths);
        let edges: Vec<_> = d.edges().collect();
        let live: BTreeSet<_> = d.vertices().collect();
        check_edge_paths(&edges, &live, &paths).unwrap();
    }

    #[test]
    fn cycle_on_eighteen() {
        let pairs: Vec<_> = (0..18).map(|i| (i, (i + 1) % 18)).collect();
        let d = DemandGraph::from_pairs(18, &pairs).unwrap();
        let f = TwoMatching::new(d.edge_ids());
        let (h, cert) = run(&d, [0, 6, 12], &[], &f);
        assert_eq!(h.vertex_count(), 15);
        assert!(h.max_degree() <= 1);
        compose_matching(&d, &h, &cert);
    }

    #[test]
    fn empty_f_only_resolves() {
        // a 2-bundle at vertex 0, vertices 0, 5, 10 independent
        let d = DemandGraph::from_pairs(21, &[(0, 1), (0, 1), (2, 3)]).unwrap();
        let (h, cert) = run(&d, [0, 5, 10], &[], &TwoMatching::default());
        assert_eq!(cert.lifts.len(), 1);
        assert_eq!(h.edge_count(), 2);
        assert!(h.contains_edge(EdgeId(2)));
    }

    #[test]
    fn protected_vertices_receive_nothing() {
        let pairs: Vec<_> = (0..24).map(|i| (i, (i + 1) % 24)).collect();
        let d = DemandGraph::from_pairs(24, &pairs).unwrap();
        let f = TwoMatching::new(d.edge_ids());
        let b = [3, 4, 15];
        let (h, cert) = run(&d, [0, 8, 16], &b, &f);
        compose_matching(&d, &h, &cert);
    }

    #[test]
    fn preconditions() {
        let d = DemandGraph::from_pairs(18, &[(0, 1)]).unwrap();
        let f = TwoMatching::default();
        let mut g = d.clone();
        assert!(matches!(
            reduce_by_lifting(&mut g, [0, 1, 2], &[], &f),
            Err(ReduceError::PreconditionViolated(_))
        ));
        let mut g = d.clone();
        assert!(matches!(
            reduce_by_lifting(&mut g, [0, 2, 3], &[2], &f),
            Err(ReduceError::PreconditionViolated(_))
        ));
        let heavy: Vec<_> = (1..4).map(|v| (0, v)).collect();
        let d = DemandGraph::from_pairs(18, &heavy).unwrap();
        let mut g = d.clone();
        assert!(matches!(
            reduce_by_lifting(&mut g, [4, 5, 6], &[], &f),
            Err(ReduceError::PreconditionViolated(_))
        ));
    }
}
