use thiserror::Error;

use crate::base::BaseSpec;
use crate::graph::{DemandGraph, Label, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenerateError {
    #[error("bad parameters: {0}")]
    BadParams(String),
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub base: BaseSpec,
    pub demand: DemandGraph,
}

fn bundles(base: BaseSpec, pairs: impl IntoIterator<Item = ((Vertex, Vertex), usize)>) -> Instance {
    let mut demand = DemandGraph::new(base.vertex_count());
    let mut next = 1;
    for ((u, v), q) in pairs {
        for _ in 0..q {
            demand.add_demand(Label(next), u, v).expect("generated pairs are valid");
            next += 1;
        }
    }
    Instance { base, demand }
}

/// A perfect matching of `K_n` ({1,2}, {3,4}, ...) with every edge replaced
/// by `q` parallel copies.
pub fn one_factor_bundles(n: usize, q: usize) -> Result<Instance, GenerateError> {
    if n < 2 || n % 2 == 1 {
        return Err(GenerateError::BadParams(format!("one-factor needs an even n >= 2, got {n}")));
    }
    let base = BaseSpec::complete(n).map_err(|e| GenerateError::BadParams(e.to_string()))?;
    Ok(bundles(base, (0..n / 2).map(|i| ((2 * i, 2 * i + 1), q))))
}

/// In `K_t^d` (t even), every vertex paired by `q` parallel edges with the
/// vertex whose coordinates are `t + 1 - a_j`.
pub fn antipodal(t: usize, d: usize, q: usize) -> Result<Instance, GenerateError> {
    if t % 2 == 1 {
        return Err(GenerateError::BadParams(format!("antipodal pairing needs an even t, got {t}")));
    }
    let base = BaseSpec::grid(t, d).map_err(|e| GenerateError::BadParams(e.to_string()))?;
    let mut pairs = Vec::new();
    for v in 0..base.vertex_count() {
        let mirrored: Vec<usize> = base.coords(v).unwrap().iter().map(|&a| t + 1 - a).collect();
        let w = base.index(&mirrored).unwrap();
        if v < w {
            pairs.push(((v, w), q));
        }
    }
    Ok(bundles(base, pairs))
}

/// Two disjoint `(n-2)`-bundles in `K_n`: `2n - 4` edges, one too many.
pub fn double_bundle(n: usize) -> Result<Instance, GenerateError> {
    if n < 4 {
        return Err(GenerateError::BadParams(format!("double bundle needs n >= 4, got {n}")));
    }
    let base = BaseSpec::complete(n).unwrap();
    Ok(bundles(base, [((0, 1), n - 2), ((2, 3), n - 2)]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_factor_is_regular() {
        let inst = one_factor_bundles(6, 2).unwrap();
        assert_eq!(inst.demand.edge_count(), 6);
        assert!((0..6).all(|v| inst.demand.degree(v) == 2 && inst.demand.gamma(v) == 1));
        assert!(one_factor_bundles(5, 1).is_err());
    }

    #[test]
    fn antipodal_pairs_differ_everywhere() {
        let inst = antipodal(4, 2, 1).unwrap();
        assert_eq!(inst.demand.edge_count(), 8);
        for (_, e) in inst.demand.edges() {
            let (a, b) = (inst.base.coords(e.u).unwrap(), inst.base.coords(e.v).unwrap());
            assert!(a.iter().zip(&b).all(|(x, y)| x != y));
        }
        assert!((0..16).all(|v| inst.demand.degree(v) == 1));
        assert!(antipodal(3, 2, 1).is_err());
    }

    #[test]
    fn double_bundle_counts() {
        let inst = double_bundle(5).unwrap();
        assert_eq!(inst.demand.edge_count(), 6);
        assert_eq!(inst.demand.multiplicity_between(0, 1), 3);
        assert_eq!(inst.demand.multiplicity_between(2, 3), 3);
    }
}
