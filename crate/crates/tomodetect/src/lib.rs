//! Detection of systematic measurement errors in quantum state tomography.
//!
//! The core idea: reconstruct a quantum state twice from the same Pauli
//! measurement data — once with the unbiased least-squares inversion
//! (which may leave the physical state space) and once with the closest
//! physical (positive semidefinite, unit trace) state. The Hilbert-Schmidt
//! distance `D` between the two estimates is the error signal. A vector
//! Bernstein bound converts `D` into the probability that statistics alone
//! produced it, yielding a confidence level for the presence of a
//! systematic error.
//!
//! The crate also answers the design question "how good does my probe
//! state have to be?": it computes the minimal state purity required to
//! detect a given single-qubit misalignment, via a closed form for single
//! qubits, constrained Bloch-matrix maximization for qubit pairs, and a
//! pure-probe-state approximation for up to three qubits. Entanglement
//! requirements (some errors are invisible to every separable state) are
//! resolved through PPT-restricted searches.
//!
//! Modules mirror the pipeline:
//!
//! - [`linalg`] — small dense complex Hermitian linear algebra (Jacobi
//!   eigensolver, tensor products, partial transpose, simplex projection).
//! - [`states`] — density matrices, Bloch decompositions, white noise,
//!   and the quantum-dot source model.
//! - [`error_models`] — misalignment matrices, wave-plate optics, and
//!   systematic-error scenarios.
//! - [`tomography`] — Pauli settings, Born probabilities, shot sampling,
//!   least-squares inversion, physical projection, and the distance `D`.
//! - [`positivity`] — polynomial positivity constraints on Bloch data and
//!   their PPT-restricted counterparts.
//! - [`purity_search`] — minimal-purity searches (closed form, constrained
//!   maximization, probe-state approximation, angle-grid survey).
//! - [`stats`] — the Bernstein confidence bound, the detection verdict,
//!   and the sub-experiment histogram pipeline.
//!
//! The `tomodetect` binary exposes the pipeline as subcommands
//! (`simulate`, `detect`, `sweep`, `purity-min`, `analyze`, `fidelity`,
//! `qdot-state`); the `examples/` directory holds one runnable program per
//! major capability.

pub mod error_models;
pub mod linalg;
pub mod positivity;
pub mod purity_search;
pub mod states;
pub mod stats;
pub mod tomography;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: max |a_ij - conj(a_ji)| = {max_asymmetry:.3e} exceeds tolerance {tolerance:.1e}")]
    NotHermitian { max_asymmetry: f64, tolerance: f64 },

    #[error("unsupported dimension {dim}: {context}")]
    UnsupportedDimension { dim: usize, context: &'static str },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("empty vector passed to {0}")]
    EmptyInput(&'static str),

    #[error("value {value} out of range for {what}: expected {expected}")]
    OutOfRange {
        what: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("not a valid density matrix: {0}")]
    InvalidState(String),

    #[error("invalid quantum-dot model parameters: {0}")]
    InvalidModelParameters(String),

    #[error("measurement error model is invalid: {0}")]
    InvalidErrorModel(String),

    #[error("tomography record is invalid: {0}")]
    InvalidRecord(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("eigensolver failed to converge after {sweeps} sweeps (off-diagonal norm {offdiag:.3e})")]
    NoConvergence { sweeps: usize, offdiag: f64 },
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
