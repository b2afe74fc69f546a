use std::collections::BTreeMap;

use super::{route_direct, undo_lifts, EdgePaths, RealizeError};
use crate::base::BaseSpec;
use crate::graph::{DemandGraph, Edge, EdgeId, Lift, Vertex};
use crate::oracle::brute::{search_edge_paths, MAX_ORACLE_EDGES, MAX_ORACLE_VERTICES};
use crate::realization::Realization;

/// Largest edge count covered in `K_n`: `2n − 5`, and the single edge of `K_2`.
fn edge_limit(n: usize) -> usize {
    if n == 2 {
        1
    } else {
        (2 * n).saturating_sub(5)
    }
}

/// Realizes `d` in `K_n` when `e(d) ≤ 2n − 5` and `Δ(d) ≤ n − 1`.
pub fn realize_edge_bounded(d: &DemandGraph, n: usize) -> Result<Realization, RealizeError> {
    if d.universe() != n {
        return Err(RealizeError::BaseMismatch { graph: d.universe(), base: n });
    }
    let mut g = d.clone();
    let paths = edge_bounded_paths(&mut g)?;
    Ok(Realization::from_edge_paths(BaseSpec::Complete { n }, d, paths).expect("every edge routed"))
}

pub(crate) fn check_edge_bound(g: &DemandGraph) -> Result<(), RealizeError> {
    let n = g.vertex_count();
    if g.edge_count() > edge_limit(n) {
        return Err(RealizeError::PreconditionViolated(format!(
            "e={} > 2n−5={} (n={n})",
            g.edge_count(),
            2 * n as i64 - 5
        )));
    }
    if g.max_degree() + 1 > n {
        return Err(RealizeError::PreconditionViolated(format!("Δ={} > n−1={}", g.max_degree(), n as i64 - 1)));
    }
    Ok(())
}

fn edge_bounded_paths(g: &mut DemandGraph) -> Result<EdgePaths, RealizeError> {
    check_edge_bound(g)?;
    let n = g.vertex_count();
    if g.edge_count() == 0 {
        return Ok(EdgePaths::new());
    }
    if n <= 6 {
        return oracle(g);
    }
    let padding = pad(g);
    let mut paths = if let Some(paths) = two_bundles(g) {
        paths
    } else if let Some(plan) = find_plan(g) {
        *g = plan.graph;
        let mut paths = edge_bounded_paths(g)?;
        route_direct(&plan.deleted, &mut paths);
        undo_lifts(&plan.lifts, &mut paths);
        paths
    } else {
        oracle(g)?
    };
    for id in padding {
        paths.remove(&id);
    }
    Ok(paths)
}

fn oracle(g: &DemandGraph) -> Result<EdgePaths, RealizeError> {
    let live: Vec<Vertex> = g.vertices().collect();
    if live.len() > MAX_ORACLE_VERTICES || g.edge_count() > MAX_ORACLE_EDGES {
        return Err(RealizeError::Unrealizable);
    }
    search_edge_paths(g, &live, &BaseSpec::Complete { n: g.universe() })?.ok_or(RealizeError::Unrealizable)
}

/// Adds padding edges between non-neighbors of degree below `n − 1` until
/// there are exactly `2n − 5` edges.
fn pad(g: &mut DemandGraph) -> Vec<EdgeId> {
    let n = g.vertex_count();
    let live: Vec<Vertex> = g.vertices().collect();
    let mut added = Vec::new();
    while g.edge_count() < edge_limit(n) {
        let open = |g: &DemandGraph, parallel: bool| {
            live.iter().enumerate().find_map(|(i, &u)| {
                live[i + 1..]
                    .iter()
                    .find(|&&v| g.degree(u) + 1 < n && g.degree(v) + 1 < n && (parallel || !g.is_adjacent(u, v)))
                    .map(|&v| (u, v))
            })
        };
        let Some((u, v)) = open(g, false).or_else(|| open(g, true)) else {
            break;
        };
        added.push(g.add_padding(u, v).expect("live pair"));
    }
    added
}

/// An `(n−2)`-bundle `uv` plus an `(n−3)`-bundle `xy`: both go direct and
/// through every other vertex, `uv` additionally through `x`.
fn two_bundles(g: &DemandGraph) -> Option<EdgePaths> {
    let n = g.vertex_count();
    let mut bundles: BTreeMap<(Vertex, Vertex), Vec<EdgeId>> = BTreeMap::new();
    for (id, e) in g.edges() {
        bundles.entry((e.u.min(e.v), e.u.max(e.v))).or_default().push(id);
    }
    let mut sizes: Vec<_> = bundles.iter().map(|(&p, ids)| (ids.len(), p)).collect();
    sizes.sort();
    let [(small, (x, y)), (big, (u, v))] = sizes[..] else {
        return None;
    };
    if big != n - 2 || small != n - 3 {
        return None;
    }
    let others: Vec<Vertex> = g.vertices().filter(|w| ![u, v, x, y].contains(w)).collect();
    let mut paths = EdgePaths::new();
    let mut route = |ids: &[EdgeId], vias: &[Vertex]| {
        for (k, &id) in ids.iter().enumerate() {
            let e = g.edge(id).unwrap();
            let p = if k == 0 { vec![e.u, e.v] } else { vec![e.u, vias[k - 1], e.v] };
            paths.insert(id, p);
        }
    };
    let mut via_uv = others.clone();
    via_uv.push(x);
    route(&bundles[&(u, v)], &via_uv);
    route(&bundles[&(x, y)], &others);
    Some(paths)
}

struct Plan {
    graph: DemandGraph,
    lifts: Vec<Lift>,
    deleted: Vec<(EdgeId, Edge)>,
}

/// A reduction to a smaller instance that still satisfies the edge and
/// degree bounds: lift a few edges onto a vertex `x`, resolve the
/// multiplicities of `x` and delete it; failing that, delete both ends of
/// a bundle.
fn find_plan(g: &DemandGraph) -> Option<Plan> {
    let n = g.vertex_count();
    let heavy = |v: &Vertex| g.degree(*v) + 2 >= n;
    let mut order: Vec<Vertex> = g.vertices().collect();
    order.sort_by_key(|v| (!heavy(v), std::cmp::Reverse(g.gamma(*v)), *v));
    for size in 0..=3 {
        for &x in &order {
            let mut pairs: BTreeMap<(Vertex, Vertex), EdgeId> = BTreeMap::new();
            for (id, e) in g.edges() {
                if !e.touches(x) {
                    pairs.entry((e.u.min(e.v), e.u.max(e.v))).or_insert(id);
                }
            }
            let reps: Vec<EdgeId> = pairs.into_values().collect();
            let mut chosen = Vec::with_capacity(size);
            if let Some(plan) = subsets(&reps, size, 0, &mut chosen, &mut |set| try_vertex(g, x, set)) {
                return Some(plan);
            }
        }
    }
    let mut bundles: Vec<(usize, Vertex, Vertex)> = Vec::new();
    for (id, e) in g.edges() {
        let (a, b) = (e.u.min(e.v), e.u.max(e.v));
        if g.edges().find(|(_, f)| f.pair() == (a, b)).map(|(i, _)| i) == Some(id) {
            bundles.push((g.multiplicity_between(a, b), a, b));
        }
    }
    bundles.sort_by_key(|&(k, a, b)| (std::cmp::Reverse(k), a, b));
    bundles.into_iter().find_map(|(_, a, b)| try_pair(g, a, b))
}

fn subsets(
    reps: &[EdgeId],
    k: usize,
    from: usize,
    chosen: &mut Vec<EdgeId>,
    visit: &mut dyn FnMut(&[EdgeId]) -> Option<Plan>,
) -> Option<Plan> {
    if chosen.len() == k {
        return visit(chosen);
    }
    for i in from..reps.len() {
        chosen.push(reps[i]);
        if let Some(plan) = subsets(reps, k, i + 1, chosen, visit) {
            return Some(plan);
        }
        chosen.pop();
    }
    None
}

/// Resolution targets: non-neighbors, lowest degree first.
fn resolution_targets(g: &DemandGraph, x: Vertex) -> Vec<Vertex> {
    let mut ts: Vec<Vertex> = g.vertices().filter(|&w| w != x && !g.is_adjacent(x, w)).collect();
    ts.sort_by_key(|&w| (g.degree(w), w));
    ts
}

fn within_bounds(g: &DemandGraph) -> bool {
    let n = g.vertex_count();
    g.edge_count() <= edge_limit(n) && g.max_degree() < n
}

fn try_vertex(g: &DemandGraph, x: Vertex, lift_set: &[EdgeId]) -> Option<Plan> {
    let mut sim = g.clone();
    let mut lifts = Vec::new();
    for &id in lift_set {
        lifts.push(sim.lift(id, x).ok()?);
    }
    let targets = resolution_targets(&sim, x);
    lifts.extend(sim.resolve_multiplicities_using(x, &targets).ok()?);
    let deleted = sim.delete_vertex(x).ok()?;
    within_bounds(&sim).then_some(Plan { graph: sim, lifts, deleted })
}

fn try_pair(g: &DemandGraph, a: Vertex, b: Vertex) -> Option<Plan> {
    let mut sim = g.clone();
    let mut lifts = Vec::new();
    let copies = sim.neighbors(a).remove(&b)?;
    for &id in &copies[1..] {
        let w = resolution_targets(&sim, a).into_iter().find(|&w| w != b && !sim.is_adjacent(b, w))?;
        lifts.push(sim.lift(id, w).ok()?);
    }
    for v in [a, b] {
        let targets = resolution_targets(&sim, v);
        lifts.extend(sim.resolve_multiplicities_using(v, &targets).ok()?);
    }
    let mut deleted = sim.delete_vertex(a).ok()?;
    deleted.extend(sim.delete_vertex(b).ok()?);
    within_bounds(&sim).then_some(Plan { graph: sim, lifts, deleted })
}
