//! Error type shared by all modules.

use thiserror::Error;

/// Errors raised by the geometry, assembly, linear-algebra and engine layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input outside the admissible coordinate range of the surface or chart.
    #[error("domain: {0}")]
    Domain(String),

    /// A grid or value was supplied in the wrong chart.
    #[error("chart mismatch: {0}")]
    ChartMismatch(String),

    /// Root solve or iteration failed to reach the requested tolerance.
    #[error("no convergence: {0}")]
    NoConvergence(String),

    /// A factorization shift landed within tolerance of an eigenvalue, so the
    /// inertia count at that shift is ambiguous; retry with a perturbed shift.
    #[error("shift singular: {0}")]
    ShiftSingular(String),

    /// The interior block of a Steklov reduction is singular, so the
    /// Dirichlet-to-Neumann map does not exist on that channel.
    #[error("interior singular: {0}")]
    InteriorSingular(String),

    /// Boundary value vanishes, so a Steklov ratio is undefined.
    #[error("singular boundary value: {0}")]
    Singular(String),

    /// Certificate function must be strictly positive.
    #[error("nonpositive certificate function: {0}")]
    NonpositiveH(String),

    /// A quantity that must be nonzero (e.g. a normalization) vanished.
    #[error("zero function: {0}")]
    ZeroFunction(String),

    /// Dirichlet boundary data violates the solvability condition
    /// (nonzero boundary mean).
    #[error("not solvable: {0}")]
    NotSolvable(String),

    /// The projection Gram matrix is not invertible with the expected inertia.
    #[error("gram singular: {0}")]
    GramSingular(String),

    /// Malformed user input (e.g. boundary-data records).
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// Convenience alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
