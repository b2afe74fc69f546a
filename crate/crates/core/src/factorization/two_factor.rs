use std::collections::{BTreeMap, BTreeSet};

use super::{bipartite_double_cover, eulerian_orientation, perfect_matching_regular_bipartite, FactorError};
use crate::graph::{DemandGraph, EdgeId, Vertex};

/// Edge set with every degree at most 2.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TwoMatching {
    pub edges: BTreeSet<EdgeId>,
}

impl TwoMatching {
    pub fn new(edges: impl IntoIterator<Item = EdgeId>) -> Self {
        TwoMatching { edges: edges.into_iter().collect() }
    }

    /// Degree in the matching of every vertex it touches; `None` if some
    /// edge is not in `g`.
    pub fn degrees(&self, g: &DemandGraph) -> Option<BTreeMap<Vertex, usize>> {
        let mut deg = BTreeMap::new();
        for &id in &self.edges {
            let e = g.edge(id)?;
            *deg.entry(e.u).or_insert(0) += 1;
            *deg.entry(e.v).or_insert(0) += 1;
        }
        Some(deg)
    }

    pub fn degree(&self, g: &DemandGraph, v: Vertex) -> usize {
        self.edges
            .iter()
            .filter(|&&id| g.edge(id).is_some_and(|e| e.touches(v)))
            .count()
    }

    pub fn is_two_matching_of(&self, g: &DemandGraph) -> bool {
        self.degrees(g).is_some_and(|d| d.values().all(|&k| k <= 2))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoFactorization {
    pub factors: Vec<BTreeSet<EdgeId>>,
}

fn even_regular_degree(g: &DemandGraph) -> Result<usize, FactorError> {
    let mut degrees = g.vertices().map(|v| g.degree(v));
    let first = degrees.next().ok_or(FactorError::NotEvenRegular)?;
    if first == 0 || first % 2 == 1 || degrees.any(|d| d != first) {
        return Err(FactorError::NotEvenRegular);
    }
    Ok(first)
}

/// One spanning 2-regular subgraph of a 2k-regular graph.
pub fn extract_two_factor(g: &DemandGraph) -> Result<BTreeSet<EdgeId>, FactorError> {
    even_regular_degree(g)?;
    let o = eulerian_orientation(g)?;
    let m = perfect_matching_regular_bipartite(&bipartite_double_cover(g, &o))?;
    Ok(m.into_iter().collect())
}

/// Splits a 2k-regular graph into k edge-disjoint 2-factors, peeling one at
/// a time from the residual graph.
pub fn two_factorization(g: &DemandGraph) -> Result<TwoFactorization, FactorError> {
    let k = even_regular_degree(g)? / 2;
    let mut rest = g.clone();
    let mut factors = Vec::with_capacity(k);
    for _ in 0..k {
        let factor = extract_two_factor(&rest)?;
        for &id in &factor {
            rest.remove_edge(id).expect("factor edges are live");
        }
        factors.push(factor);
    }
    Ok(TwoFactorization { factors })
}

/// Greedily adds edges of `g` (ascending id) to `seed` while degrees stay at
/// most 2; the result is maximal.
pub fn extend_to_maximal_two_matching(g: &DemandGraph, seed: &TwoMatching) -> Result<TwoMatching, FactorError> {
    let mut deg = seed.degrees(g).ok_or(FactorError::SeedNotTwoMatching)?;
    if deg.values().any(|&k| k > 2) {
        return Err(FactorError::SeedNotTwoMatching);
    }
    let mut out = seed.clone();
    for (id, e) in g.edges() {
        if out.edges.contains(&id) {
            continue;
        }
        let (du, dv) = (deg.get(&e.u).copied().unwrap_or(0), deg.get(&e.v).copied().unwrap_or(0));
        if du < 2 && dv < 2 {
            out.edges.insert(id);
            *deg.entry(e.u).or_insert(0) += 1;
            *deg.entry(e.v).or_insert(0) += 1;
        }
    }
    Ok(out)
}
