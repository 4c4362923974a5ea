//! Bakry-Émery curvature of weighted graphs.
//!
//! The curvature `K(G, x; N)` at a vertex is the largest `K` with
//! `Γ₂(f)(x) ≥ (1/N)(Δf(x))² + K Γ(f)(x)` for every function `f`. It is
//! computed exactly from a small symmetric eigenproblem on the two-ball
//! around `x`.

pub mod classify;
pub mod curvature;
pub mod error;
pub mod families;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod operators;
pub mod random;

pub use curvature::{
    check_cd, curvature, curvature_all, curvature_profile, CdReport, CurvatureResult, Dimension, CD_TOLERANCE,
};
pub use error::{Error, Result};
pub use graph::{GraphBuilder, Laplacian, Vertex, WeightedGraph};
pub use operators::VertexFunction;
