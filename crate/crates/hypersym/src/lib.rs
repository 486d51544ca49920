//! Exact construction and verification of hypersymplectic structures on Lie algebras.
//!
//! Scalars are exact rationals throughout; floats appear only in the geodesic
//! probe and in coordinate evaluation of metrics.

pub mod bicrossproduct;
pub mod catalog4d;
pub mod classify2d;
pub mod cli;
pub mod connection;
pub mod core_tensor;
pub mod cps;
pub mod error;
pub mod hypersymplectic;
pub mod liealg;
pub mod report;
pub mod scalar;
pub mod suite;

pub use core_tensor::{halfangle_trig, signature, Angle, BilinearForm, Endomorphism, HalfAngle, Matrix, Symmetry, Tensor3, Vector};
pub use error::{Error, Result};
pub use scalar::Scalar;
