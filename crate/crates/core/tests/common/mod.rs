#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use terminal_pairing::graph::{DemandGraph, Label, Vertex};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn derangement(n: usize, rng: &mut ChaCha8Rng) -> Vec<Vertex> {
    let mut p: Vec<Vertex> = (0..n).collect();
    loop {
        p.shuffle(rng);
        if p.iter().enumerate().all(|(i, &j)| i != j) {
            return p;
        }
    }
}

/// 2k-regular multigraph on n vertices: the union of k random derangements,
/// each vertex joined to its image.
pub fn random_even_regular(n: usize, degree: usize, rng: &mut ChaCha8Rng) -> DemandGraph {
    assert!(degree.is_multiple_of(2));
    let mut pairs = Vec::new();
    for _ in 0..degree / 2 {
        let p = derangement(n, rng);
        pairs.extend((0..n).map(|v| (v, p[v])));
    }
    DemandGraph::from_pairs(n, &pairs).unwrap()
}

/// Random loopless multigraph with at most `m` edges and maximum degree at
/// most `max_degree`, built by rejection.
pub fn random_bounded(n: usize, m: usize, max_degree: usize, rng: &mut ChaCha8Rng) -> DemandGraph {
    let mut deg = vec![0; n];
    let mut pairs = Vec::new();
    let mut attempts = 0;
    while pairs.len() < m && attempts < 50 * m + 50 {
        attempts += 1;
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a != b && deg[a] < max_degree && deg[b] < max_degree {
            deg[a] += 1;
            deg[b] += 1;
            pairs.push((a, b));
        }
    }
    DemandGraph::from_pairs(n, &pairs).unwrap()
}

/// Relabels a graph's pairs with labels 1..=m (fresh graph).
pub fn pairs_of(d: &DemandGraph) -> Vec<(Vertex, Vertex)> {
    d.edges().map(|(_, e)| (e.u, e.v)).collect()
}

pub fn label(i: u64) -> Label {
    Label(i)
}
