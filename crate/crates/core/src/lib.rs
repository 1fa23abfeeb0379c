//! Discrete Wigner functions for n qubits over GF(2^n) phase space, the
//! Hadamard-matrix spin-flip transform on them, and concurrence.
//!
//! The numerical core is generic over [`Scalar`]: `f64`, `f32` and exact
//! rationals ([`Exact`]) all work, which lets the algebraic identities be
//! checked with zero deviation.

pub mod entanglement;
pub mod error;
pub mod finite_field;
pub mod fixtures;
pub mod io;
pub mod linalg;
pub mod mub;
pub mod phase_space;
pub mod sampling;
pub mod scalar;
pub mod spinflip;
pub mod tomography;
pub mod verify;
pub mod wigner;

pub use error::{Error, Result};
pub use finite_field::{CoordinateBasis, FieldElement, FieldSpec};
pub use phase_space::{LineId, PhasePoint, PhaseSpace, QuantumNet};
pub use scalar::{RealScalar, Scalar};

/// Exact rational scalar.
pub type Exact = num_rational::BigRational;

pub type MubsF64 = mub::MubCollection<f64>;
pub type MubsExact = mub::MubCollection<Exact>;
pub type PhasePointSetF64 = wigner::PhasePointSet<f64>;
pub type PhasePointSetExact = wigner::PhasePointSet<Exact>;
pub type DensityF64 = wigner::DensityMatrix<f64>;
pub type DwfF64 = wigner::DwfVector<f64>;
pub type SMatrixF64 = spinflip::ConjugationMatrix<f64>;
pub type HMatrixF64 = spinflip::SpinFlipMatrix<f64>;
pub type SMatrixExact = spinflip::ConjugationMatrix<Exact>;
