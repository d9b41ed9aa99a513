//! Exact rational simplicial geometry inside the unit cube.

mod complex;
pub mod lattice;
pub mod linalg;
mod point;
pub mod polytope;
mod simplex;
mod subdivide;
mod triangulate;

use thiserror::Error;

pub use complex::{is_connected, is_regular_complex, is_strongly_regular, Complex, ComplexJson};
pub use point::{denominator, homogeneous_correspondent, RationalPoint};
pub use polytope::{Halfspace, Polytope};
pub use simplex::{is_regular_simplex, Simplex};
pub use subdivide::{
    blow_up, desingularize, desingularize_with, determinant_profile, standard_cube_triangulation,
    Desingularization,
};
pub use triangulate::{
    arrangement_complex, covers, joint_subdivision, overlay_cells, pull_triangulate,
    support_equal, triangulate_cells,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("coordinate {0} outside [0,1]")]
    OutsideCube(String),
    #[error("empty point set")]
    Empty,
    #[error("vertices are affinely dependent")]
    AffinelyDependent,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("not a simplicial complex: {0}")]
    NotAComplex(String),
    #[error("supports differ")]
    SupportMismatch,
    #[error("blow-up center {0} is already a vertex")]
    CenterIsVertex(String),
    #[error("point {0} lies outside the support")]
    OutsideSupport(String),
    #[error("complex is not regular")]
    NotRegular,
    #[error("complex is empty")]
    EmptyComplex,
    #[error("malformed input: {0}")]
    Format(String),
}
