use std::collections::BTreeMap;

use super::FactorError;
use crate::graph::{DemandGraph, EdgeId, Vertex};

/// Direction `(tail, head)` of every edge.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Orientation {
    pub arcs: BTreeMap<EdgeId, (Vertex, Vertex)>,
}

impl Orientation {
    pub fn out_degree(&self, v: Vertex) -> usize {
        self.arcs.values().filter(|&&(a, _)| a == v).count()
    }

    pub fn in_degree(&self, v: Vertex) -> usize {
        self.arcs.values().filter(|&&(_, b)| b == v).count()
    }
}

/// Orients every edge along closed trails, so in-degree equals out-degree.
pub fn eulerian_orientation(g: &DemandGraph) -> Result<Orientation, FactorError> {
    if let Some(v) = g.vertices().find(|&v| g.degree(v) % 2 == 1) {
        return Err(FactorError::OddDegree(v));
    }
    let mut incident: Vec<Vec<EdgeId>> = (0..g.universe()).map(|v| g.incident(v).to_vec()).collect();
    for list in &mut incident {
        list.sort_by(|a, b| b.cmp(a));
    }
    let mut arcs = BTreeMap::new();
    for start in g.vertices() {
        // every vertex has even residual degree, so a walk can only stall at its start
        let mut x = start;
        loop {
            let next = loop {
                match incident[x].pop() {
                    Some(id) if arcs.contains_key(&id) => continue,
                    other => break other,
                }
            };
            let Some(id) = next else {
                debug_assert_eq!(x, start);
                break;
            };
            let y = g.edge(id).expect("live edge").other(x);
            arcs.insert(id, (x, y));
            x = y;
        }
    }
    Ok(Orientation { arcs })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn balanced(g: &DemandGraph, o: &Orientation) -> bool {
        o.arcs.len() == g.edge_count() && g.vertices().all(|v| o.in_degree(v) == o.out_degree(v))
    }

    #[test]
    fn two_bundle() {
        let g = DemandGraph::from_pairs(2, &[(0, 1), (0, 1)]).unwrap();
        let o = eulerian_orientation(&g).unwrap();
        let dirs: Vec<_> = o.arcs.values().copied().collect();
        assert!(dirs == vec![(0, 1), (1, 0)] || dirs == vec![(1, 0), (0, 1)]);
    }

    #[test]
    fn doubled_four_cycle() {
        let c = [(0, 1), (1, 2), (2, 3), (3, 0)];
        let g = DemandGraph::from_pairs(4, &[c, c].concat()).unwrap();
        let o = eulerian_orientation(&g).unwrap();
        assert!(balanced(&g, &o));
        assert!((0..4).all(|v| o.out_degree(v) == 2));
    }

    #[test]
    fn empty_and_odd() {
        let g = DemandGraph::new(3);
        assert!(eulerian_orientation(&g).unwrap().arcs.is_empty());
        let g = DemandGraph::from_pairs(3, &[(0, 1)]).unwrap();
        assert_eq!(eulerian_orientation(&g), Err(FactorError::OddDegree(0)));
    }

    #[test]
    fn disconnected_components() {
        let g = DemandGraph::from_pairs(7, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 6), (6, 3), (3, 5), (5, 3)])
            .unwrap();
        assert!(balanced(&g, &eulerian_orientation(&g).unwrap()));
    }
}
