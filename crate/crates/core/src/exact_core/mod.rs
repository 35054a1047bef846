//! Exact rational linear algebra and small polyhedral primitives.

pub mod halfspace;
pub mod hull;
pub mod lp;
pub mod matrix;
pub mod rational;

pub use halfspace::{strict_feasible, Certificate, Feasibility, Halfspace, HalfspaceSystem};
pub use hull::{affine_dimension, dual_graph_distance, facet_adjacency, facets_brute_force};
pub use matrix::{kernel_basis, rank, same_row_space, Matrix};
pub use rational::{frac, parse_q, q, qvec, Q};
