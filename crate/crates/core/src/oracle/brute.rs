//! Exhaustive realizability and MaxEDP oracles for tiny instances.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::base::BaseSpec;
use crate::graph::{DemandGraph, EdgeId, Vertex};
use crate::realization::{Path, Realization};

pub const MAX_ORACLE_VERTICES: usize = 8;
pub const MAX_ORACLE_EDGES: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance too large for the exhaustive oracle ({vertices} vertices, {edges} demands; limits {MAX_ORACLE_VERTICES} and {MAX_ORACLE_EDGES})")]
    TooLarge { vertices: usize, edges: usize },
    #[error("demand graph has {graph} vertices but the base graph has {base}")]
    BaseMismatch { graph: usize, base: usize },
}

/// Exact decision: returns a realization of every demand of `d` in `base`, or
/// `None` when no system of edge-disjoint paths exists.
pub fn brute_force_realize(d: &DemandGraph, base: &BaseSpec) -> Result<Option<Realization>, OracleError> {
    if d.universe() != base.vertex_count() {
        return Err(OracleError::BaseMismatch { graph: d.universe(), base: base.vertex_count() });
    }
    let vertices: Vec<Vertex> = d.vertices().collect();
    let Some(paths) = search_edge_paths(d, &vertices, base)? else {
        return Ok(None);
    };
    Ok(Some(
        Realization::from_edge_paths(*base, d, paths).expect("oracle routes every edge"),
    ))
}

/// Oracle over the live vertices of `d`, with host adjacency from `base`
/// restricted to those vertices. Paths are oriented from each edge's `u`.
pub(crate) fn search_edge_paths(
    d: &DemandGraph,
    vertices: &[Vertex],
    base: &BaseSpec,
) -> Result<Option<BTreeMap<EdgeId, Path>>, OracleError> {
    if vertices.len() > MAX_ORACLE_VERTICES || d.edge_count() > MAX_ORACLE_EDGES {
        return Err(OracleError::TooLarge { vertices: vertices.len(), edges: d.edge_count() });
    }
    let local: BTreeMap<Vertex, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let edges: Vec<(EdgeId, usize, usize)> = d
        .edges()
        .map(|(id, e)| (id, local[&e.u], local[&e.v]))
        .collect();
    let demands: Vec<(usize, usize)> = edges.iter().map(|&(_, a, b)| (a, b)).collect();
    let adjacent = |a: usize, b: usize| base.is_edge(vertices[a], vertices[b]);
    let found = Searcher::new(vertices.len(), &adjacent).solve(&demands);
    Ok(found.map(|paths| {
        edges
            .iter()
            .zip(paths)
            .map(|(&(id, _, _), p)| (id, p.into_iter().map(|i| vertices[i]).collect()))
            .collect()
    }))
}

/// Largest number of demands of `d` that can be realized simultaneously.
pub fn brute_force_maxedp(d: &DemandGraph, base: &BaseSpec) -> Result<usize, OracleError> {
    if d.universe() != base.vertex_count() {
        return Err(OracleError::BaseMismatch { graph: d.universe(), base: base.vertex_count() });
    }
    let vertices: Vec<Vertex> = d.vertices().collect();
    if vertices.len() > MAX_ORACLE_VERTICES || d.edge_count() > MAX_ORACLE_EDGES {
        return Err(OracleError::TooLarge { vertices: vertices.len(), edges: d.edge_count() });
    }
    let local: BTreeMap<Vertex, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    // parallel demands are interchangeable: enumerate multiplicity vectors
    let mut bundles: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (_, e) in d.edges() {
        let (a, b) = (local[&e.u], local[&e.v]);
        *bundles.entry((a.min(b), a.max(b))).or_default() += 1;
    }
    let bundles: Vec<((usize, usize), usize)> = bundles.into_iter().collect();
    let mut choices: Vec<Vec<usize>> = vec![Vec::new()];
    for &(_, k) in &bundles {
        choices = choices
            .into_iter()
            .flat_map(|c| {
                (0..=k).map(move |take| {
                    let mut c = c.clone();
                    c.push(take);
                    c
                })
            })
            .collect();
    }
    choices.sort_by_key(|c| std::cmp::Reverse(c.iter().sum::<usize>()));
    let adjacent = |a: usize, b: usize| base.is_edge(vertices[a], vertices[b]);
    let searcher = Searcher::new(vertices.len(), &adjacent);
    for choice in choices {
        let demands: Vec<(usize, usize)> = bundles
            .iter()
            .zip(&choice)
            .flat_map(|(&(pair, _), &take)| std::iter::repeat_n(pair, take))
            .collect();
        if searcher.solve(&demands).is_some() {
            return Ok(demands.len());
        }
    }
    Ok(0)
}

/// A simple path as its vertex list and host-edge bitmask.
type MaskedPath = (Vec<usize>, u64);

struct Searcher {
    k: usize,
    /// simple paths per pair `s < t`, shortest first
    paths: BTreeMap<(usize, usize), Vec<MaskedPath>>,
    /// bitmask of host edges at each vertex
    incident: Vec<u64>,
}

impl Searcher {
    fn new(k: usize, adjacent: &dyn Fn(usize, usize) -> bool) -> Self {
        let mut edge_index = vec![vec![None; k]; k];
        let mut incident = vec![0u64; k];
        let mut next = 0;
        for a in 0..k {
            for b in a + 1..k {
                if adjacent(a, b) {
                    edge_index[a][b] = Some(next);
                    edge_index[b][a] = Some(next);
                    incident[a] |= 1 << next;
                    incident[b] |= 1 << next;
                    next += 1;
                }
            }
        }
        let mut paths = BTreeMap::new();
        for s in 0..k {
            for t in s + 1..k {
                let mut out = Vec::new();
                let mut stack = vec![s];
                enumerate(&edge_index, t, &mut stack, 0, &mut out);
                out.sort_by_key(|(p, _): &(Vec<usize>, u64)| p.len());
                paths.insert((s, t), out);
            }
        }
        Searcher { k, paths, incident }
    }

    fn solve(&self, demands: &[(usize, usize)]) -> Option<Vec<Vec<usize>>> {
        let mut deg = vec![0usize; self.k];
        for &(a, b) in demands {
            deg[a] += 1;
            deg[b] += 1;
        }
        // decreasing endpoint degree; parallel demands end up adjacent
        let mut order: Vec<usize> = (0..demands.len()).collect();
        let key = |i: usize| {
            let (a, b) = demands[i];
            (std::cmp::Reverse(deg[a] + deg[b]), a.min(b), a.max(b))
        };
        order.sort_by_key(|&i| key(i));
        let sorted: Vec<(usize, usize)> = order.iter().map(|&i| demands[i]).collect();
        let mut chosen = Vec::with_capacity(sorted.len());
        let mut remaining = deg.clone();
        if !self.dfs(&sorted, 0, 0, &mut remaining, &mut chosen) {
            return None;
        }
        let mut out = vec![Vec::new(); demands.len()];
        for (j, &(_, idx)) in chosen.iter().enumerate() {
            let slot = order[j];
            let (a, _) = demands[slot];
            let (s, t) = sorted[j];
            let mut p = self.paths[&(s.min(t), s.max(t))][idx].0.clone();
            if p[0] != a {
                p.reverse();
            }
            out[slot] = p;
        }
        Some(out)
    }

    fn dfs(
        &self,
        demands: &[(usize, usize)],
        i: usize,
        used: u64,
        remaining: &mut Vec<usize>,
        chosen: &mut Vec<(usize, usize)>,
    ) -> bool {
        if i == demands.len() {
            return true;
        }
        // every vertex needs a free host edge per demand still ending there
        if remaining.iter().zip(&self.incident).any(|(&r, &inc)| r > (inc & !used).count_ones() as usize) {
            return false;
        }
        let (a, b) = demands[i];
        let key = (a.min(b), a.max(b));
        let same_as_prev = i > 0 && {
            let (c, d) = demands[i - 1];
            (c.min(d), c.max(d)) == key
        };
        let first = match (same_as_prev, chosen.last()) {
            (true, Some(&(_, prev))) => prev + 1,
            _ => 0,
        };
        remaining[a] -= 1;
        remaining[b] -= 1;
        for (idx, (_, mask)) in self.paths[&key].iter().enumerate().skip(first) {
            if mask & used != 0 {
                continue;
            }
            chosen.push((i, idx));
            if self.dfs(demands, i + 1, used | mask, remaining, chosen) {
                return true;
            }
            chosen.pop();
        }
        remaining[a] += 1;
        remaining[b] += 1;
        false
    }
}

fn enumerate(
    edge_index: &[Vec<Option<usize>>],
    t: usize,
    stack: &mut Vec<usize>,
    mask: u64,
    out: &mut Vec<(Vec<usize>, u64)>,
) {
    let x = *stack.last().unwrap();
    if x == t {
        out.push((stack.clone(), mask));
        return;
    }
    for y in 0..edge_index.len() {
        if let Some(e) = edge_index[x][y] {
            if !stack.contains(&y) {
                stack.push(y);
                enumerate(edge_index, t, stack, mask | (1 << e), out);
                stack.pop();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::verify::verify_realization;

    fn k(n: usize) -> BaseSpec {
        BaseSpec::Complete { n }
    }

    #[test]
    fn bundle_in_k4() {
        let d = DemandGraph::from_pairs(4, &[(0, 1), (0, 1)]).unwrap();
        let r = brute_force_realize(&d, &k(4)).unwrap().expect("realizable");
        assert!(verify_realization(&d, &r).ok());
    }

    #[test]
    fn two_double_bundles_in_k4_fail() {
        let d = DemandGraph::from_pairs(4, &[(0, 1), (0, 1), (2, 3), (2, 3)]).unwrap();
        assert!(brute_force_realize(&d, &k(4)).unwrap().is_none());
        assert_eq!(brute_force_maxedp(&d, &k(4)).unwrap(), 3);
    }

    #[test]
    fn maxedp_small_cases() {
        let empty = DemandGraph::new(4);
        assert_eq!(brute_force_maxedp(&empty, &k(4)).unwrap(), 0);
        let all: Vec<_> = (0..4).flat_map(|a| (a + 1..4).map(move |b| (a, b))).collect();
        let d = DemandGraph::from_pairs(4, &all).unwrap();
        assert_eq!(brute_force_maxedp(&d, &k(4)).unwrap(), 6);
    }

    #[test]
    fn guard_rails() {
        let d = DemandGraph::new(9);
        assert!(matches!(brute_force_realize(&d, &k(9)), Err(OracleError::TooLarge { .. })));
        let d = DemandGraph::from_pairs(5, &[(0, 1); 11]).unwrap();
        assert!(matches!(brute_force_realize(&d, &k(5)), Err(OracleError::TooLarge { .. })));
    }

    #[test]
    fn grid_base_is_respected() {
        // opposite corners of the square K_2 x K_2 need a 2-path
        let d = DemandGraph::from_pairs(4, &[(0, 3)]).unwrap();
        let g = BaseSpec::Grid { t: 2, d: 2 };
        let r = brute_force_realize(&d, &g).unwrap().unwrap();
        assert_eq!(r.paths.values().next().unwrap().len(), 3);
        assert!(verify_realization(&d, &r).ok());
    }
}
