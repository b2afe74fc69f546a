use std::collections::VecDeque;

use super::{FactorError, Orientation};
use crate::graph::{DemandGraph, EdgeId, Vertex};

/// Bipartite multigraph with sides `{v'}` and `{v''}`: one edge `v'_i v''_j`
/// per arc `i -> j`, remembering the demand edge it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteCover {
    pub universe: usize,
    pub edges: Vec<(Vertex, Vertex, EdgeId)>,
}

pub fn bipartite_double_cover(g: &DemandGraph, o: &Orientation) -> BipartiteCover {
    BipartiteCover {
        universe: g.universe(),
        edges: o.arcs.iter().map(|(&id, &(a, b))| (a, b, id)).collect(),
    }
}

/// Perfect matching of a regular bipartite multigraph (Hopcroft-Karp).
/// Vertices without edges on either side are ignored. Returns the matched
/// edges' demand ids, one per left vertex.
pub fn perfect_matching_regular_bipartite(b: &BipartiteCover) -> Result<Vec<EdgeId>, FactorError> {
    let n = b.universe;
    let mut left_deg = vec![0usize; n];
    let mut right_deg = vec![0usize; n];
    for &(l, r, _) in &b.edges {
        left_deg[l] += 1;
        right_deg[r] += 1;
    }
    let degree = left_deg.iter().chain(&right_deg).copied().find(|&d| d > 0).unwrap_or(0);
    if left_deg.iter().chain(&right_deg).any(|&d| d != 0 && d != degree) {
        return Err(FactorError::NotRegular);
    }
    let mut adj: Vec<Vec<(Vertex, usize)>> = vec![Vec::new(); n];
    for (i, &(l, r, _)) in b.edges.iter().enumerate() {
        adj[l].push((r, i));
    }
    let left: Vec<Vertex> = (0..n).filter(|&v| left_deg[v] > 0).collect();
    let mut hk = HopcroftKarp {
        adj: &adj,
        match_left: vec![None; n],
        match_right: vec![None; n],
        dist: vec![usize::MAX; n],
    };
    while hk.bfs(&left) {
        for &l in &left {
            if hk.match_left[l].is_none() {
                hk.dfs(l);
            }
        }
    }
    let mut out = Vec::with_capacity(left.len());
    for &l in &left {
        let (_, i) = hk.match_left[l].ok_or(FactorError::NotRegular)?;
        out.push(b.edges[i].2);
    }
    Ok(out)
}

struct HopcroftKarp<'a> {
    adj: &'a [Vec<(Vertex, usize)>],
    /// (right vertex, edge index) matched to each left vertex
    match_left: Vec<Option<(Vertex, usize)>>,
    match_right: Vec<Option<Vertex>>,
    dist: Vec<usize>,
}

impl HopcroftKarp<'_> {
    /// Layers free left vertices; true if some augmenting path exists.
    fn bfs(&mut self, left: &[Vertex]) -> bool {
        let mut queue = VecDeque::new();
        for &l in left {
            if self.match_left[l].is_none() {
                self.dist[l] = 0;
                queue.push_back(l);
            } else {
                self.dist[l] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &(r, _) in &self.adj[l] {
                match self.match_right[r] {
                    None => found = true,
                    Some(next) if self.dist[next] == usize::MAX => {
                        self.dist[next] = self.dist[l] + 1;
                        queue.push_back(next);
                    }
                    Some(_) => {}
                }
            }
        }
        found
    }

    fn dfs(&mut self, l: Vertex) -> bool {
        for k in 0..self.adj[l].len() {
            let (r, i) = self.adj[l][k];
            let ok = match self.match_right[r] {
                None => true,
                Some(next) => self.dist[next] == self.dist[l] + 1 && self.dfs(next),
            };
            if ok {
                self.match_left[l] = Some((r, i));
                self.match_right[r] = Some(l);
                return true;
            }
        }
        self.dist[l] = usize::MAX;
        false
    }
}
