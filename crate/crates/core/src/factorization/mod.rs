//! Petersen 2-factorization through Eulerian orientations and matchings of
//! the bipartite double cover, maximal 2-matchings, and lifting colorings.

mod coloring;
mod cover;
mod orientation;
mod two_factor;

use thiserror::Error;

use crate::graph::Vertex;

pub use coloring::{balanced_lifting_coloring, Color, LiftingColoring};
pub use cover::{bipartite_double_cover, perfect_matching_regular_bipartite, BipartiteCover};
pub use orientation::{eulerian_orientation, Orientation};
pub use two_factor::{
    extend_to_maximal_two_matching, extract_two_factor, two_factorization, TwoFactorization, TwoMatching,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FactorError {
    #[error("vertex {0} has odd degree")]
    OddDegree(Vertex),
    #[error("bipartite graph is not regular")]
    NotRegular,
    #[error("graph is not 2k-regular for any k >= 1")]
    NotEvenRegular,
    #[error("seed is not a 2-matching of the graph")]
    SeedNotTwoMatching,
    #[error("pinned vertices {0} and {1} are joined by an edge of the 2-matching")]
    PinsAdjacent(Vertex, Vertex),
    #[error("pinned vertices must be distinct vertices of the coloring domain")]
    BadPins,
    #[error("no balanced lifting coloring found")]
    ColoringFailed,
}
