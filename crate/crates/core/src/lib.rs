//! Closed-form topological defect solutions of the complex eikonal equation
//! `(∇u)² = 0` in three space dimensions: braided cylindrical strings,
//! elliptic-cylinder strings, massive variants, and spherical hedgehogs.
//!
//! The crate constructs the analytic solution families, certifies every PDE
//! identity they satisfy (eikonal, massive eikonal, Laplace, O(3) equation of
//! motion, effective-mass equation) against seeded point samples, and computes
//! the associated topological data: winding numbers, monopole degrees, defect
//! string loci, traced string curves, and braid-closure torus-link labels.

pub mod elliptic;
pub mod error;
pub mod field;
pub mod residuals;
pub mod sampling;
pub mod solutions;
pub mod topology;

pub use error::Error;
pub use field::{fd_gradient, fd_laplacian, stereographic_project, FieldSample, Point3, UnitVector3};
pub use solutions::SolutionSpec;

/// Scalar type used by the evaluation, residual and topology layers.
///
/// The special-function layer ([`elliptic`]) is generic over any
/// `num_traits::Float`; everything downstream pins `f64` because the
/// certification tolerances (1e-6 .. 1e-12) are double-precision figures.
pub type Real = f64;

/// Complex field values.
pub type Complex = num_complex::Complex<Real>;

/// Result alias for fallible operations in this crate.
pub type Result<T> = std::result::Result<T, Error>;
