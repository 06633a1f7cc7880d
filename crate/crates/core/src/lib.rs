//! Exact analysis of simplices spanned by vertices of the unit cube.
//!
//! A simplex with one vertex at the origin is stored as a square 0/1 matrix
//! whose columns are its other vertices. Everything here is exact: integer
//! and rational arithmetic only.

pub mod bitcore;
pub mod canon;
pub mod enumerate;
pub mod error;
pub mod exact;
pub mod geometry;
pub mod golden;
pub mod neighbors;
pub mod ortho;
pub mod structure;

pub use bitcore::{BinMatrix, BinVector, Permutation, MAX_DIM};
pub use canon::{canonical_form, equivalent, CanonicalForm, OriginChoice};
pub use enumerate::{
    enumerate_classes, sweep_verify, EnumerationResult, Filter, Property, SweepReport,
};
pub use error::{Error, Result};
pub use exact::{ExactMatrix, ExactVector, IntMatrix};
pub use geometry::{classify, Classification, StochasticSplit, Verdict};
pub use neighbors::{neighbor_search, FacetId, NeighborReport, Target};
pub use ortho::{
    enumerate_upper_triangular_ortho, is_orthogonal_simplex, spanning_tree, OrthoTree,
};
pub use structure::{
    block_diagonalize, block_triangular_form, find_partition_witness, indecomposable_components,
    is_fully_indecomposable, BlockDecomposition, ComplexStructure,
};
