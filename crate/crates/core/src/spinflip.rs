//! The spin-flip transform on DWF vectors.
//!
//! Complex conjugation of the state acts on its DWF as
//! `W* = S W` with `S(alpha, beta) = Tr(A_alpha conj(A_beta)) / N`, and the
//! subsequent `sigma_y^{⊗n}` conjugation is a rigid phase-space shift `T`.
//! Together `W~ = H W` with `H = T S`. Both `S` and `H` have entries `+-1/N`
//! and orthogonal rows, and neither depends on the quantum net.

use crate::error::{Error, Result};
use crate::finite_field::{CoordinateBasis, FieldSpec};
use crate::linalg::{Permutation, RMatrix};
use crate::mub::MubCollection;
use crate::phase_space::{PhasePoint, PhaseSpace, QuantumNet};
use crate::scalar::Scalar;
use crate::wigner::{phase_point_operators, DwfVector, PhasePointSet, ALGEBRAIC_TOL};

/// Allowed distance of an `S` entry from `+-1/N`.
pub const HADAMARD_ENTRY_TOL: f64 = 1e-8;

/// `S`, carrying the `1/N` factor.
#[derive(Debug, Clone, PartialEq)]
pub struct ConjugationMatrix<T> {
    qubits: u32,
    matrix: RMatrix<T>,
}

/// `T` together with the shift `beta` it implements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslationPermutation {
    beta: PhasePoint,
    perm: Permutation,
}

/// `H = T S`, carrying the `1/N` factor.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinFlipMatrix<T> {
    qubits: u32,
    beta: PhasePoint,
    matrix: RMatrix<T>,
}

/// Integer `+-1` core `N * M` of a matrix whose entries are `+-1/N` (or 0/1 for `T`).
fn integer_core<T: Scalar>(m: &RMatrix<T>, scale: f64) -> Vec<Vec<i64>> {
    (0..m.dim()).map(|i| m.row(i).iter().map(|v| (v.to_f64() * scale).round() as i64).collect()).collect()
}

impl<T: Scalar> ConjugationMatrix<T> {
    pub fn matrix(&self) -> &RMatrix<T> {
        &self.matrix
    }

    pub fn qubits(&self) -> u32 {
        self.qubits
    }

    /// N^2
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// The `+-1` Hadamard core `N * S`.
    pub fn core(&self) -> Vec<Vec<i64>> {
        integer_core(&self.matrix, (1u64 << self.qubits) as f64)
    }

    /// `N x N` block `(bi, bj)` of `S`; block row `bi` is the vertical line `q = element(bi)`.
    pub fn block(&self, bi: usize, bj: usize) -> RMatrix<T> {
        self.matrix.block(bi, bj, 1 << self.qubits)
    }

    pub fn report(&self) -> HadamardReport {
        hadamard_report(&self.matrix, self.qubits)
    }
}

impl TranslationPermutation {
    pub fn beta(&self) -> PhasePoint {
        self.beta
    }

    pub fn permutation(&self) -> &Permutation {
        &self.perm
    }

    pub fn matrix<T: Scalar>(&self) -> RMatrix<T> {
        self.perm.to_matrix()
    }

    /// 0/1 core, identical to the matrix itself.
    pub fn core(&self) -> Vec<Vec<i64>> {
        integer_core(&self.perm.to_matrix::<f64>(), 1.0)
    }
}

impl<T: Scalar> SpinFlipMatrix<T> {
    pub fn matrix(&self) -> &RMatrix<T> {
        &self.matrix
    }

    pub fn beta(&self) -> PhasePoint {
        self.beta
    }

    pub fn qubits(&self) -> u32 {
        self.qubits
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn core(&self) -> Vec<Vec<i64>> {
        integer_core(&self.matrix, (1u64 << self.qubits) as f64)
    }

    pub fn report(&self) -> HadamardReport {
        hadamard_report(&self.matrix, self.qubits)
    }

    /// `W~ = H W`
    pub fn apply(&self, w: &DwfVector<T>) -> Result<DwfVector<T>> {
        apply(&self.matrix, w)
    }
}

fn apply<T: Scalar>(m: &RMatrix<T>, w: &DwfVector<T>) -> Result<DwfVector<T>> {
    if w.len() != m.dim() {
        return Err(Error::DimensionMismatch { expected: m.dim(), got: w.len() });
    }
    DwfVector::new(w.qubits(), m.mul_vec(w.values()))
}

/// `S(alpha, beta) = Tr(A_alpha conj(A_beta)) / N`, computed from the operators.
///
/// Fails when an entry has an imaginary part above 1e-10 or is not within
/// 1e-8 of `+-1/N`, which signals a broken conjugation structure of the MUBs.
pub fn build_s<T: Scalar>(ops: &PhasePointSet<T>) -> Result<ConjugationMatrix<T>> {
    let space = ops.space();
    let dim = space.num_points();
    let inv_n = T::ratio(1, space.dim() as i64);
    let inv_n_f = 1.0 / space.dim() as f64;
    let a = ops.operators();
    let mut matrix = RMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            let z = a[i].trace_product_conj(&a[j]);
            let value = z.re * inv_n.clone();
            let imag = z.im.abs_f64() * inv_n_f;
            let v = value.to_f64();
            if imag > ALGEBRAIC_TOL || (v.abs() - inv_n_f).abs() > HADAMARD_ENTRY_TOL {
                return Err(Error::NotHadamard { row: i, col: j, value: v, imag });
            }
            matrix[(i, j)] = value;
        }
    }
    Ok(ConjugationMatrix { qubits: space.qubits(), matrix })
}

/// `W* = S W`, the DWF of the complex-conjugated state.
pub fn conjugate_dwf<T: Scalar>(w: &DwfVector<T>, s: &ConjugationMatrix<T>) -> Result<DwfVector<T>> {
    apply(&s.matrix, w)
}

/// The shift `beta` with `T_beta ∝ sigma_y^{⊗n}`: every coordinate of `q` and
/// `p` equals one, so `q = sum e_i` and `p = sum f_i`.
pub fn sigma_y_shift_vector(spec: &FieldSpec, horizontal: &CoordinateBasis, vertical: &CoordinateBasis) -> PhasePoint {
    debug_assert_eq!(horizontal.len(), spec.n() as usize);
    PhasePoint::new(horizontal.all_ones(), vertical.all_ones())
}

/// `T` with `T[idx(alpha), idx(alpha + beta)] = 1`.
pub fn build_t(space: &PhaseSpace, beta: PhasePoint) -> TranslationPermutation {
    TranslationPermutation { beta, perm: space.translation_permutation(beta) }
}

/// `T` for the `sigma_y^{⊗n}` shift of `space`'s own bases.
pub fn build_sigma_y_t(space: &PhaseSpace) -> TranslationPermutation {
    build_t(space, sigma_y_shift_vector(space.field(), space.horizontal(), space.vertical()))
}

/// `H = T S`; row `i` of `H` is row `T(i)` of `S`.
pub fn build_h<T: Scalar>(t: &TranslationPermutation, s: &ConjugationMatrix<T>) -> Result<SpinFlipMatrix<T>> {
    if t.perm.len() != s.dim() {
        return Err(Error::DimensionMismatch { expected: s.dim(), got: t.perm.len() });
    }
    Ok(SpinFlipMatrix { qubits: s.qubits, beta: t.beta, matrix: t.perm.permute_rows(&s.matrix) })
}

/// Structural checks of a `+-1/N` matrix of size `N^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct HadamardReport {
    /// Largest distance of an entry from `+-1/N`.
    pub entry_deviation: f64,
    /// `max |(N M)(N M)^T - N^2 I|`
    pub orthogonality_error: f64,
    /// `max |M M - I|`
    pub involution_error: f64,
    pub determinant: f64,
}

impl HadamardReport {
    pub fn is_hadamard(&self, tol: f64) -> bool {
        self.entry_deviation <= tol && self.orthogonality_error <= tol
    }

    pub fn is_involution(&self, tol: f64) -> bool {
        self.involution_error <= tol
    }
}

pub fn hadamard_report<T: Scalar>(m: &RMatrix<T>, qubits: u32) -> HadamardReport {
    let n = T::from_i64(1 << qubits);
    let inv_n = 1.0 / (1u64 << qubits) as f64;
    let entry_deviation = (0..m.dim())
        .flat_map(|i| m.row(i).iter().map(|v| (v.abs_f64() - inv_n).abs()).collect::<Vec<_>>())
        .fold(0.0, f64::max);
    let core = m.map(|v| v.clone() * n.clone());
    let gram = &core * &core.transpose();
    let n2 = T::from_i64(1 << (2 * qubits));
    let orthogonality_error = gram.max_abs_diff(&RMatrix::<T>::identity(m.dim()).map(|v: &T| v.clone() * n2.clone()));
    let involution_error = (m * m).max_abs_diff(&RMatrix::identity(m.dim()));
    HadamardReport { entry_deviation, orthogonality_error, involution_error, determinant: m.determinant().to_f64() }
}

/// Outcome of [`net_independence_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct NetIndependenceReport {
    pub nets_checked: usize,
    /// Largest entrywise deviation of `S` from the first net's `S`.
    pub max_deviation_s: f64,
    /// Same for `H`.
    pub max_deviation_h: f64,
}

/// Builds `S` and `H` for every net and compares them against the first.
/// Fails on the first net whose `S` or `H` deviates by 1e-10 or more.
pub fn net_independence_check<T: Scalar>(mubs: &MubCollection<T>, nets: &[QuantumNet]) -> Result<NetIndependenceReport> {
    if nets.len() < 2 {
        return Err(Error::TooFewNets(nets.len()));
    }
    let t = build_sigma_y_t(mubs.space());
    let s0 = build_s(&phase_point_operators(&nets[0], mubs)?)?;
    let h0 = build_h(&t, &s0)?;
    let (mut max_s, mut max_h) = (0.0f64, 0.0f64);
    for (i, net) in nets.iter().enumerate().skip(1) {
        let s = build_s(&phase_point_operators(net, mubs)?)?;
        let h = build_h(&t, &s)?;
        let ds = s.matrix.max_abs_diff(&s0.matrix);
        let dh = h.matrix.max_abs_diff(&h0.matrix);
        max_s = max_s.max(ds);
        max_h = max_h.max(dh);
        if ds >= ALGEBRAIC_TOL || dh >= ALGEBRAIC_TOL {
            return Err(Error::NetDependent { a: 0, b: i, deviation: ds.max(dh) });
        }
    }
    Ok(NetIndependenceReport { nets_checked: nets.len(), max_deviation_s: max_s, max_deviation_h: max_h })
}
