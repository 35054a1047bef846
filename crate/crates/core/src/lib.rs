//! Exact-arithmetic transportation polytopes.

pub mod axial_path;
pub mod birkhoff_verify;
pub mod chamber_enum;
pub mod error;
pub mod exact_core;
pub mod hirsch_lab;
pub mod polytope;
pub mod serde_q;
pub mod transport_model;
pub mod vertex_enum;

pub use error::{Error, Result};
pub use exact_core::rational::Q;
pub use transport_model::{Kind, TransportSpec};
pub use vertex_enum::{PolytopeGraph, Table};
