//! Phase-space analysis of bipartite compass states.
//!
//! The crate builds the two-particle superposition
//!
//! ```text
//! Psi(x1, x2) = N * [ A * psi(x1) * phi(x2) + B * phi(x1) * psi(x2) ]
//! ```
//!
//! where `psi` is an even superposition of two position-displaced Gaussians
//! (a position cat), `phi` is its Fourier dual (a momentum cat), and `N`
//! normalizes the non-orthogonal superposition. It then provides:
//!
//! * [`states`] — wavefunctions, overlaps, normalization, displacement.
//! * [`wigner_analytic`] — the closed-form four-dimensional Wigner function,
//!   split into stable diagonal and cross components, plus section grids.
//! * [`wigner_oracle`] — independent brute-force evaluation of the same
//!   Wigner function by tensor quadrature of the defining correlation
//!   integral; this is the ground truth the closed form is tested against.
//! * [`analysis`] — zero-lattice detection on section grids, the interference
//!   tile area, checkerboard classification, marginals, and a two-mode
//!   variance witness.
//! * [`sensitivity`] — displacement-overlap curves, their closed-form shapes,
//!   and minimum-shift extraction.
//! * [`conformance`] — a self-check suite tying all of the above together,
//!   used by the command-line `validate` subcommand.
//!
//! All numerics are plain `f64`; every quadrature rule is built
//! deterministically so repeated runs are bit-identical.

pub mod analysis;
pub mod conformance;
pub mod quadrature;
pub mod sensitivity;
pub mod states;
pub mod wigner_analytic;
pub mod wigner_oracle;

pub use num_complex::Complex64;

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// State parameters fail basic validation (non-finite, non-positive
    /// widths, both weights zero, ...).
    #[error("invalid state parameters: {0}")]
    InvalidParams(String),

    /// The superposition norm radicand `|A|^2 + |B|^2 + 2 Re(A* B) g^2`
    /// is not strictly positive, so no normalized state exists.
    #[error("degenerate superposition: norm radicand {radicand:.6e} is not positive")]
    DegenerateState {
        /// Value of the offending radicand.
        radicand: f64,
    },

    /// A quadrature specification fails validation.
    #[error("invalid quadrature spec: {0}")]
    InvalidQuadrature(String),

    /// The requested quadrature cannot resolve the fastest oscillation of
    /// the integrand.
    #[error(
        "quadrature under-resolves the integrand: needs at least {required} nodes per axis, got {got}"
    )]
    ResolutionTooLow {
        /// Minimum admissible node count per axis.
        required: usize,
        /// Node count actually supplied.
        got: usize,
    },

    /// The assembled Wigner value failed its internal reality/consistency
    /// check. This signals an implementation bug, not a data problem.
    #[error("Wigner assembly residual {residual:.3e} exceeds tolerance at ({x1}, {p1}, {x2}, {p2})")]
    AssemblyResidual {
        /// Magnitude of the non-real residual.
        residual: f64,
        /// Phase-space coordinates of the offending point.
        x1: f64,
        /// Mode-1 momentum.
        p1: f64,
        /// Mode-2 position.
        x2: f64,
        /// Mode-2 momentum.
        p2: f64,
    },

    /// A section axis shows fewer than four midrange sign alternations, so
    /// no zero lattice can be measured along it.
    #[error("no zero lattice along axis {axis}: {crossings} sign changes in the scan window (need >= 4)")]
    NoLattice {
        /// Which grid axis failed (1 or 2).
        axis: u8,
        /// Number of sign changes actually found.
        crossings: usize,
    },

    /// A section grid is too coarse for lattice detection.
    #[error("scan too coarse: {samples_per_period:.2} samples per predicted period (need >= 8)")]
    ScanTooCoarse {
        /// Measured sampling density against the predicted period.
        samples_per_period: f64,
    },

    /// A section specification fails validation.
    #[error("invalid section spec: {0}")]
    InvalidSection(String),

    /// An overlap curve has no interior minimum to refine.
    #[error("overlap curve has no interior minimum to refine")]
    NoBracket,
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
