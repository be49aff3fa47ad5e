//! Exact rational scalars and dense linear algebra over ℚ.

pub mod linalg;
pub mod matrix;
pub mod scalar;

pub use linalg::{
    congruence_diagonalize, coordinates, det, extend_independent, independent_subset, intersect,
    invert, kernel, rank, rref, solve, span_rank, CongruenceResult,
};
pub use matrix::{
    dot, int_vector, lin_comb, unit_vector, vec_add, vec_scale, vec_sub, Mat, Vector,
};
pub use scalar::{q, ExactScalar};
