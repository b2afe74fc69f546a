//! Host graphs with implicit adjacency: the complete graph `K_n` and the
//! complete grid `K_t^d`.
//!
//! Grid vertex `i` (0-based) has coordinates `(a_1, ..., a_d)`, `1 <= a_j <= t`,
//! with `i = sum_j (a_j - 1) * t^(j-1)`; the first coordinate varies fastest.

use thiserror::Error;

use crate::graph::Vertex;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseSpec {
    Complete { n: usize },
    Grid { t: usize, d: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BaseError {
    #[error("vertex {0} is out of range")]
    OutOfRange(Vertex),
    #[error("coordinates {0:?} are out of range")]
    BadCoordinates(Vec<usize>),
    #[error("invalid base graph parameters: {0}")]
    BadParams(String),
}

impl BaseSpec {
    pub fn complete(n: usize) -> Result<Self, BaseError> {
        if n == 0 {
            return Err(BaseError::BadParams("complete base needs n >= 1".into()));
        }
        Ok(BaseSpec::Complete { n })
    }

    pub fn grid(t: usize, d: usize) -> Result<Self, BaseError> {
        if t < 2 || d < 1 {
            return Err(BaseError::BadParams("grid base needs t >= 2 and d >= 1".into()));
        }
        t.checked_pow(d as u32)
            .ok_or_else(|| BaseError::BadParams("grid too large".into()))?;
        Ok(BaseSpec::Grid { t, d })
    }

    pub fn vertex_count(&self) -> usize {
        match *self {
            BaseSpec::Complete { n } => n,
            BaseSpec::Grid { t, d } => t.pow(d as u32),
        }
    }

    /// Degree of every vertex (both host graphs are regular).
    pub fn degree(&self) -> usize {
        match *self {
            BaseSpec::Complete { n } => n - 1,
            BaseSpec::Grid { t, d } => d * (t - 1),
        }
    }

    pub fn is_edge(&self, u: Vertex, v: Vertex) -> bool {
        let count = self.vertex_count();
        if u >= count || v >= count || u == v {
            return false;
        }
        match *self {
            BaseSpec::Complete { .. } => true,
            BaseSpec::Grid { t, d } => {
                let (mut a, mut b) = (u, v);
                let mut differing = 0;
                for _ in 0..d {
                    if a % t != b % t {
                        differing += 1;
                    }
                    a /= t;
                    b /= t;
                }
                differing == 1
            }
        }
    }

    /// 1-based grid coordinates of `v`.
    pub fn coords(&self, v: Vertex) -> Result<Vec<usize>, BaseError> {
        match *self {
            BaseSpec::Grid { t, d } => {
                if v >= self.vertex_count() {
                    return Err(BaseError::OutOfRange(v));
                }
                let mut rest = v;
                Ok((0..d)
                    .map(|_| {
                        let a = rest % t + 1;
                        rest /= t;
                        a
                    })
                    .collect())
            }
            BaseSpec::Complete { n } => {
                if v >= n {
                    Err(BaseError::OutOfRange(v))
                } else {
                    Ok(vec![v + 1])
                }
            }
        }
    }

    /// Inverse of [`coords`](Self::coords).
    pub fn index(&self, coords: &[usize]) -> Result<Vertex, BaseError> {
        let (t, d) = match *self {
            BaseSpec::Grid { t, d } => (t, d),
            BaseSpec::Complete { n } => (n, 1),
        };
        if coords.len() != d || coords.iter().any(|&a| a == 0 || a > t) {
            return Err(BaseError::BadCoordinates(coords.to_vec()));
        }
        Ok(coords.iter().rev().fold(0, |acc, &a| acc * t + (a - 1)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn grid_corners() {
        let g = BaseSpec::grid(3, 2).unwrap();
        assert_eq!(g.coords(0).unwrap(), vec![1, 1]);
        assert_eq!(g.coords(8).unwrap(), vec![3, 3]);
        assert_eq!(g.coords(1).unwrap(), vec![2, 1]);
        assert_eq!(g.coords(9), Err(BaseError::OutOfRange(9)));
        assert!(g.index(&[4, 1]).is_err());
    }

    #[test]
    fn grid_adjacency() {
        let g = BaseSpec::grid(3, 2).unwrap();
        assert!(g.is_edge(0, 2));
        assert!(g.is_edge(0, 6));
        assert!(!g.is_edge(0, 4));
        assert!(!g.is_edge(0, 0));
        let deg = (1..9).filter(|&v| g.is_edge(0, v)).count();
        assert_eq!(deg, g.degree());
    }

    proptest! {
        #[test]
        fn coords_round_trip(t in 2usize..7, d in 1usize..5, seed in 0usize..10_000) {
            let g = BaseSpec::grid(t, d).unwrap();
            let v = seed % g.vertex_count();
            prop_assert_eq!(g.index(&g.coords(v).unwrap()).unwrap(), v);
        }
    }
}
