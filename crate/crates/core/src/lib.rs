//! Exact analysis of KKT points of the parametric Motzkin–Straus program
//! `max xᵀ(A + cI)x` over the standard simplex.

pub mod error;
pub mod graph;
pub mod kkt;
pub mod linalg;
pub mod rational;
pub mod replicator;
pub mod simplex;
pub mod structure;

pub use error::{Error, Result};
pub use graph::{Graph, Permutation, VertexSet};
pub use kkt::{KktCertificate, ParametricProgram, SupportSolution, Verdict};
pub use rational::Rational;
pub use simplex::{SimplexPoint, VertexFamily};
