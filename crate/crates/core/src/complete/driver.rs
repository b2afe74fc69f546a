use std::collections::{BTreeMap, BTreeSet};

use super::lemma::reduce_by_lifting;
use super::two_matching::two_matching_paths;
use super::{check_edge_paths, undo_lifts, EdgePaths, RealizeError, RealizeOptions, RunStats};
use crate::base::BaseSpec;
use crate::factorization::{extend_to_maximal_two_matching, extract_two_factor, TwoMatching};
use crate::graph::{DemandGraph, EdgeId, Vertex};
use crate::oracle::verify::verify_realization;
use crate::realization::Realization;

/// `2⌊n/6⌋ − 4`, the largest maximum degree the reduction handles in `K_n`.
pub fn degree_bound(n: usize) -> i64 {
    2 * (n as i64 / 6) - 4
}

/// Realizes `d` in `K_n` when `Δ(d) ≤ 2⌊n/6⌋ − 4`.
pub fn realize_in_complete(d: &DemandGraph, n: usize) -> Result<Realization, RealizeError> {
    realize_in_complete_with(d, n, &RealizeOptions::default()).map(|(r, _)| r)
}

pub fn realize_in_complete_with(
    d: &DemandGraph,
    n: usize,
    opts: &RealizeOptions,
) -> Result<(Realization, RunStats), RealizeError> {
    if d.universe() != n {
        return Err(RealizeError::BaseMismatch { graph: d.universe(), base: n });
    }
    let mut stats = RunStats::default();
    let mut g = d.clone();
    let paths = solve_complete(&mut g, opts, &mut stats)?;
    let r = Realization::from_edge_paths(BaseSpec::Complete { n }, d, paths)
        .map_err(|e| RealizeError::SelfCheck(e.to_string()))?;
    if opts.self_check {
        let report = verify_realization(d, &r);
        if !report.ok() {
            return Err(RealizeError::SelfCheck(format!("{:?}", report.violations)));
        }
    }
    Ok((r, stats))
}

/// Lexicographically first triple of pairwise non-adjacent live vertices.
pub fn pick_independent_triple(d: &DemandGraph) -> Option<[Vertex; 3]> {
    let vs: Vec<Vertex> = d.vertices().collect();
    for (i, &a) in vs.iter().enumerate() {
        for (j, &b) in vs.iter().enumerate().skip(i + 1) {
            if d.is_adjacent(a, b) {
                continue;
            }
            for &c in &vs[j + 1..] {
                if !d.is_adjacent(a, c) && !d.is_adjacent(b, c) {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

/// Routes every live edge of `g` inside the complete graph on its live
/// vertices; `g` is consumed by the reductions.
pub(crate) fn solve_complete(
    g: &mut DemandGraph,
    opts: &RealizeOptions,
    stats: &mut RunStats,
) -> Result<EdgePaths, RealizeError> {
    let n = g.vertex_count();
    let delta = g.max_degree();
    if delta == 0 {
        return Ok(EdgePaths::new());
    }
    let bound = degree_bound(n);
    if delta as i64 > bound {
        return Err(RealizeError::DegreeBoundExceeded { max_degree: delta, bound, n });
    }
    let input: Vec<_> = g.edges().collect();
    let live: BTreeSet<Vertex> = g.vertices().collect();
    let target = delta + delta % 2;
    let paths = if n < 24 || target <= 2 {
        two_matching_paths(g)?
    } else {
        reduce_twice(g, target, opts, stats)?
    };
    if opts.self_check {
        check_edge_paths(&input, &live, &paths).map_err(RealizeError::SelfCheck)?;
        stats.levels_checked += 1;
    }
    Ok(paths)
}

/// One recursion step: regularize, apply the reduction with (A1, X1, B1)
/// and then with (F2, B1, B2), recurse on six fewer vertices and compose.
fn reduce_twice(
    g: &mut DemandGraph,
    target: usize,
    opts: &RealizeOptions,
    stats: &mut RunStats,
) -> Result<EdgePaths, RealizeError> {
    let reg = g.regularize_to_even_degree(target)?;
    let regular = opts.self_check.then(|| g.clone());

    let x1 = pick_independent_triple(g)
        .ok_or_else(|| RealizeError::PreconditionViolated("no independent triple".into()))?;
    let a1 = extract_two_factor(g)?;
    let mut rest = g.clone();
    for &id in &a1 {
        rest.remove_edge(id)?;
    }
    let a2 = extract_two_factor(&rest)?;
    for &x in &x1 {
        rest.delete_vertex(x)?;
    }
    let seed = TwoMatching::new(a2.iter().copied().filter(|&id| rest.contains_edge(id)));
    let f2 = extend_to_maximal_two_matching(&rest, &seed)?;
    let a1 = TwoMatching { edges: a1 };
    let (b1, b2) = choose_b(g, &a1, &f2, x1)?;

    let cert1 = reduce_by_lifting(g, x1, &b1, &a1)?;
    stats.reductions += 1;
    if let Some(before) = &regular {
        cert1.check(before, g, &a1, &b1).map_err(RealizeError::SelfCheck)?;
        stats.certificates_checked += 1;
    }
    let h1 = opts.self_check.then(|| g.clone());
    let cert2 = reduce_by_lifting(g, b1, &b2, &f2)?;
    stats.reductions += 1;
    if let Some(before) = &h1 {
        cert2.check(before, g, &f2, &b2).map_err(RealizeError::SelfCheck)?;
        stats.certificates_checked += 1;
    }

    let mut paths = solve_complete(g, opts, stats)?;
    cert2.compose(&mut paths);
    if let Some(h1) = &h1 {
        check_level(h1, &paths)?;
        stats.levels_checked += 1;
    }
    cert1.compose(&mut paths);
    if let Some(regular) = &regular {
        check_level(regular, &paths)?;
        stats.levels_checked += 1;
    }
    undo_lifts(&reg.lifts, &mut paths);
    for id in &reg.padding {
        paths.remove(id);
    }
    Ok(paths)
}

fn check_level(g: &DemandGraph, paths: &EdgePaths) -> Result<(), RealizeError> {
    let edges: Vec<_> = g.edges().collect();
    let live: BTreeSet<Vertex> = g.vertices().collect();
    check_edge_paths(&edges, &live, paths).map_err(RealizeError::SelfCheck)
}

/// B1: three vertices outside X1, independent in D - A1, containing every
/// vertex missed by F2, such that at most three other vertices have
/// F2-degree 1 (those form B2). Candidates of F2-degree 1 are tried first.
fn choose_b(
    d: &DemandGraph,
    a1: &TwoMatching,
    f2: &TwoMatching,
    x1: [Vertex; 3],
) -> Result<([Vertex; 3], Vec<Vertex>), RealizeError> {
    let fdeg = f2.degrees(d).expect("F2 lives in D");
    let deg = |v: &Vertex| fdeg.get(v).copied().unwrap_or(0);
    let outside: Vec<Vertex> = d.vertices().filter(|v| !x1.contains(v)).collect();
    let forced: Vec<Vertex> = outside.iter().copied().filter(|v| deg(v) == 0).collect();
    let ones: Vec<Vertex> = outside.iter().copied().filter(|v| deg(v) == 1).collect();
    let twos = outside.iter().copied().filter(|v| deg(v) == 2);
    let pool: Vec<Vertex> = ones.iter().copied().chain(twos).collect();
    let adjacent = |u: Vertex, v: Vertex| -> bool {
        d.neighbors(u).get(&v).is_some_and(|ids: &Vec<EdgeId>| ids.iter().any(|id| !a1.edges.contains(id)))
    };
    let fail = || RealizeError::PreconditionViolated("no admissible protected triple B1".into());
    if forced.len() > 3 {
        return Err(fail());
    }
    let mut adj_cache: BTreeMap<(Vertex, Vertex), bool> = BTreeMap::new();
    let mut independent = |set: &[Vertex]| {
        set.iter().enumerate().all(|(i, &u)| {
            set[i + 1..].iter().all(|&v| !*adj_cache.entry((u.min(v), u.max(v))).or_insert_with(|| adjacent(u, v)))
        })
    };
    let need = 3 - forced.len();
    let mut pick = Vec::with_capacity(need);
    let mut found = None;
    combos(&pool, need, 0, &mut pick, &mut |extra| {
        let set: Vec<Vertex> = forced.iter().chain(extra).copied().collect();
        let b2: Vec<Vertex> = ones.iter().copied().filter(|v| !set.contains(v)).collect();
        if b2.len() <= 3 && independent(&set) {
            found = Some(([set[0], set[1], set[2]], b2));
            true
        } else {
            false
        }
    });
    found.ok_or_else(fail)
}

/// Visits k-subsets of `pool` in lexicographic position order until `visit`
/// returns true.
fn combos(pool: &[Vertex], k: usize, from: usize, pick: &mut Vec<Vertex>, visit: &mut dyn FnMut(&[Vertex]) -> bool) -> bool {
    if pick.len() == k {
        return visit(pick);
    }
    for i in from..pool.len() {
        pick.push(pool[i]);
        if combos(pool, k, i + 1, pick, visit) {
            return true;
        }
        pick.pop();
    }
    false
}
