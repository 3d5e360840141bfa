//! Spectral analysis of the critical catenoid.
//!
//! The critical catenoid is the free-boundary minimal surface
//! X(s, θ) = a(cosh s cos θ, cosh s sin θ, s), |s| ≤ T, in the unit ball,
//! where T solves T·tanh T = 1 and a = 1/(T cosh T). This crate computes its
//! second-variation spectrum: the stability (Jacobi) operator
//! J = −Δ − |A|² splits over Fourier modes in θ into one-dimensional
//! Sturm–Liouville problems, whose Dirichlet, Robin (free-boundary) and
//! Steklov spectra are assembled, counted and certified here. The headline
//! computation is the Morse index — the number of negative eigenvalues of J
//! under the free-boundary condition ∂u/∂ν = u — which this crate certifies
//! to equal 4, together with the auxiliary spectral facts that pin down the
//! geometry (kernel fields, Steklov eigenvalues, first nonzero Laplace
//! Steklov eigenvalue, comparison with the flat unit disk).
//!
//! All numerics are generic over the scalar type through [`Real`] (`f64` for
//! certified runs, `f32` for smoke tests). Concrete `f64` aliases for the
//! main types are exported at the crate root.

// Stencil kernels index several arrays at shared offsets, and input guards
// use `!(x > 0)` so that NaN fails them; both lints fight those idioms.
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod fields;
pub mod geometry;
pub mod index_engine;
pub mod linalg;
pub mod quadratic_forms;
mod real;
pub mod sturm_liouville;

pub use error::{Error, Result};
pub use real::Real;

/// Solved critical-catenoid constants in working precision.
pub type CriticalParams = geometry::CriticalParams<f64>;
/// Uniform radial grid in working precision.
pub type Grid1D = geometry::Grid1D<f64>;
/// Surface point in working precision.
pub type SurfacePoint = geometry::SurfacePoint<f64>;
/// Symmetric tridiagonal matrix in working precision.
pub type TriMatrix = linalg::TriMatrix<f64>;
/// Tridiagonal pencil in working precision.
pub type TriPencil = linalg::TriPencil<f64>;
/// Closed-form field on the surface in working precision.
pub type ClosedFormField = fields::ClosedFormField<f64>;
/// Per-mode Sturm–Liouville problem in working precision.
pub type ModeProblem = sturm_liouville::ModeProblem<f64>;
/// Truncated Fourier function on the surface in working precision.
pub type SurfaceFunction = quadratic_forms::SurfaceFunction<f64>;
/// Per-mode negative/zero count report in working precision.
pub type IndexReport = index_engine::IndexReport<f64>;
/// Boundary data row for the Dirichlet problem in working precision.
pub type BoundaryComponent = index_engine::BoundaryComponent<f64>;
/// Solved Dirichlet problem in working precision.
pub type DirichletSolution = index_engine::DirichletSolution<f64>;
