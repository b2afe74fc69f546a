use std::collections::{BTreeMap, BTreeSet};

use super::{EdgePaths, RealizeError};
use crate::base::BaseSpec;
use crate::graph::{DemandGraph, EdgeId, Vertex};
use crate::oracle::brute::{search_edge_paths, MAX_ORACLE_EDGES, MAX_ORACLE_VERTICES};
use crate::realization::Realization;

/// Realizes a demand graph with `Δ ≤ 2` in `K_n`.
pub fn realize_two_matching(d: &DemandGraph, n: usize) -> Result<Realization, RealizeError> {
    if d.universe() != n {
        return Err(RealizeError::BaseMismatch { graph: d.universe(), base: n });
    }
    let paths = two_matching_paths(d)?;
    Ok(Realization::from_edge_paths(BaseSpec::Complete { n }, d, paths).expect("every edge routed"))
}

/// Every pair's first copy goes direct; the second copy of a 2-bundle takes
/// the first detour `u-w-v` whose two base edges are still free. Small
/// instances where this gets stuck go to the exhaustive oracle.
pub(crate) fn two_matching_paths(g: &DemandGraph) -> Result<EdgePaths, RealizeError> {
    if g.max_degree() > 2 {
        return Err(RealizeError::PreconditionViolated(format!("Δ={} > 2", g.max_degree())));
    }
    let mut bundles: BTreeMap<(Vertex, Vertex), Vec<EdgeId>> = BTreeMap::new();
    for (id, e) in g.edges() {
        bundles.entry((e.u.min(e.v), e.u.max(e.v))).or_default().push(id);
    }
    let key = |a: Vertex, b: Vertex| (a.min(b), a.max(b));
    let mut used: BTreeSet<(Vertex, Vertex)> = bundles.keys().copied().collect();
    let mut paths = EdgePaths::new();
    let live: Vec<Vertex> = g.vertices().collect();
    let mut stuck = false;
    for (&(a, b), ids) in &bundles {
        let e = g.edge(ids[0]).unwrap();
        paths.insert(ids[0], vec![e.u, e.v]);
        for &id in &ids[1..] {
            let w = live
                .iter()
                .copied()
                .find(|&w| w != a && w != b && !used.contains(&key(a, w)) && !used.contains(&key(w, b)));
            let Some(w) = w else {
                stuck = true;
                break;
            };
            used.insert(key(a, w));
            used.insert(key(w, b));
            let e = g.edge(id).unwrap();
            paths.insert(id, vec![e.u, w, e.v]);
        }
    }
    if !stuck {
        return Ok(paths);
    }
    if live.len() > MAX_ORACLE_VERTICES || g.edge_count() > MAX_ORACLE_EDGES {
        return Err(RealizeError::Unrealizable);
    }
    let base = BaseSpec::Complete { n: g.universe() };
    search_edge_paths(g, &live, &base)?.ok_or(RealizeError::Unrealizable)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::verify::verify_realization;

    #[test]
    fn bundle_in_k3() {
        let d = DemandGraph::from_pairs(3, &[(0, 1), (0, 1)]).unwrap();
        let r = realize_two_matching(&d, 3).unwrap();
        assert_eq!(r.paths[&crate::graph::Label(1)], vec![0, 1]);
        assert_eq!(r.paths[&crate::graph::Label(2)], vec![0, 2, 1]);
    }

    #[test]
    fn nine_bundles_in_k18() {
        let pairs: Vec<_> = (0..9).flat_map(|i| [(2 * i, 2 * i + 1); 2]).collect();
        let d = DemandGraph::from_pairs(18, &pairs).unwrap();
        let r = realize_two_matching(&d, 18).unwrap();
        assert_eq!(r.paths.len(), 18);
        assert!(verify_realization(&d, &r).ok());
    }

    #[test]
    fn cycles_and_bundles_in_k20() {
        let mut pairs = vec![(0, 1), (0, 1), (2, 3), (2, 3)];
        pairs.extend((4..11).map(|i| (i, if i == 10 { 4 } else { i + 1 })));
        pairs.extend([(11, 12), (12, 13), (13, 11), (14, 15), (14, 15), (16, 17), (17, 18), (18, 19), (19, 16)]);
        let d = DemandGraph::from_pairs(20, &pairs).unwrap();
        let r = realize_two_matching(&d, 20).unwrap();
        assert!(verify_realization(&d, &r).ok());
    }

    #[test]
    fn impossible_in_k2() {
        let d = DemandGraph::from_pairs(2, &[(0, 1), (0, 1)]).unwrap();
        assert_eq!(realize_two_matching(&d, 2), Err(RealizeError::Unrealizable));
    }
}
