use thiserror::Error;

use crate::phase_space::LineId;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported qubit count {0}: expected 1..=8")]
    UnsupportedQubits(u32),

    #[error("reduction polynomial {poly:#b} is not an irreducible polynomial of degree {n} over GF(2)")]
    Reducible { n: u32, poly: u32 },

    #[error("invalid polynomial literal {0:?}")]
    PolyLiteral(String),

    #[error("element {value} is out of range for GF(2^{n})")]
    ElementOutOfRange { value: u32, n: u32 },

    #[error("elements {elements:?} do not form a GF(2)-basis of GF(2^{n})")]
    NotABasis { elements: Vec<u32>, n: u32 },

    #[error("quantum net needs {expected} offsets, each in 0..{dim}; got {got:?}")]
    InvalidNet { expected: usize, dim: usize, got: Vec<usize> },

    #[error(
        "translation operators on the origin ray of striation {striation} do not commute; \
         the horizontal/vertical basis pairing is not symplectic"
    )]
    NonCommutingRay { striation: usize },

    #[error("mutually-unbiased law violated: {detail}")]
    MubViolation { detail: String },

    #[error("conjugation structure violated between {a:?} and {b:?}: Tr[Q Q*] = {value}, expected {expected}")]
    ConjugationViolation { a: LineId, b: LineId, value: f64, expected: f64 },

    #[error("phase-point operator check failed: {0}")]
    PhasePoint(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("no probability given for line {0:?}")]
    MissingLine(LineId),

    #[error("shots must be at least 1")]
    ZeroShots,

    #[error("S[{row}][{col}] = {value} is not within 1e-8 of +-1/N (imag {imag})")]
    NotHadamard { row: usize, col: usize, value: f64, imag: f64 },

    #[error("S differs between net {a} and net {b} by {deviation:e}")]
    NetDependent { a: usize, b: usize, deviation: f64 },

    #[error("net independence needs at least two nets, got {0}")]
    TooFewNets(usize),

    #[error("state vector is not normalized: norm^2 = {0}")]
    NotNormalized(f64),

    #[error("dimension {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("concurrence needs a two-qubit (4x4) state, got dimension {0}")]
    NotTwoQubit(usize),

    #[error("eigenvalue computation did not converge")]
    Eigen,

    #[error("value {0} is not representable in the chosen scalar type")]
    Unrepresentable(f64),

    #[error("malformed input: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
