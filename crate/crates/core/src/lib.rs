//! Edge-disjoint path realizations of demand multigraphs in complete graphs
//! `K_n` and complete grids `K_t^d`, plus a MaxEDP approximation in `K_n`.
//!
//! Vertices are 0-based throughout the library; the text formats in [`cli`]
//! are 1-based.

pub mod base;
pub mod cli;
pub mod complete;
pub mod factorization;
pub mod graph;
pub mod grid;
pub mod maxedp;
pub mod oracle;
pub mod realization;

pub use base::BaseSpec;
pub use complete::{realize_edge_bounded, realize_in_complete, RealizeOptions};
pub use graph::{DemandGraph, EdgeId, Label, Vertex};
pub use grid::realize_in_grid;
pub use oracle::verify::{verify_realization, VerificationReport};
pub use realization::{Path, Realization};
