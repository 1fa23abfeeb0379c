//! Phase-point operators, the DWF of a state, reconstruction of the state
//! from its DWF, and line probabilities.
//!
//! `A_alpha = sum_{lambda ∋ alpha} P_lambda - I` and `W_alpha = Tr(rho A_alpha) / N`,
//! so that `Tr A_alpha = 1`, `Tr(A_alpha A_beta) = N δ` and
//! `rho = sum_alpha W_alpha A_alpha`. The operators are built covariantly:
//! `A_0` comes from the net's origin-line projectors and
//! `A_alpha = T_alpha A_0 T_alpha^dagger`.

use std::collections::BTreeMap;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::mub::MubCollection;
use crate::phase_space::{LineId, PhasePoint, PhaseSpace, QuantumNet};
use crate::scalar::Scalar;

/// Tolerance for the algebraic identities checked at construction.
pub const ALGEBRAIC_TOL: f64 = 1e-10;
/// Slack allowed below zero for eigenvalues of a state.
pub const PSD_TOL: f64 = 1e-8;

/// Line probabilities `p_lambda = Tr(rho P_lambda)`.
pub type LineProbabilities<T> = BTreeMap<LineId, T>;

/// Hermitian, unit-trace `N x N` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T> {
    matrix: CMatrix<T>,
}

impl<T: Scalar> DensityMatrix<T> {
    /// Checks dimension `2^n`, Hermiticity and unit trace (to 1e-10).
    pub fn new(matrix: CMatrix<T>) -> Result<Self> {
        let dim = matrix.dim();
        if dim < 2 || !dim.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(dim));
        }
        let herm = matrix.hermiticity_error();
        if herm > ALGEBRAIC_TOL {
            return Err(Error::InvalidDensity(format!("not Hermitian (error {herm:e})")));
        }
        let tr = matrix.trace();
        let tr_err = (tr.re.to_f64() - 1.0).abs().max(tr.im.abs_f64());
        if tr_err > ALGEBRAIC_TOL {
            return Err(Error::InvalidDensity(format!("trace is {} + {}i", tr.re.to_f64(), tr.im.to_f64())));
        }
        Ok(Self { matrix })
    }

    /// Wraps without validation, e.g. for reconstructions from arbitrary vectors.
    pub fn new_unchecked(matrix: CMatrix<T>) -> Self {
        Self { matrix }
    }

    /// `|psi><psi|`; `psi` must have unit norm (to 1e-10).
    pub fn from_pure(psi: &[Complex<T>]) -> Result<Self> {
        let norm2 = psi.iter().map(|z| z.norm_sqr().to_f64()).sum::<f64>();
        if (norm2 - 1.0).abs() > ALGEBRAIC_TOL {
            return Err(Error::NotNormalized(norm2));
        }
        Self::new(CMatrix::outer(psi))
    }

    /// `I / N`
    pub fn maximally_mixed(dim: usize) -> Self {
        Self { matrix: CMatrix::identity(dim).scale_real(&T::ratio(1, dim as i64)) }
    }

    /// `|k><k|`
    pub fn basis_state(dim: usize, k: usize) -> Self {
        let mut m = CMatrix::zeros(dim);
        m[(k, k)] = Complex::new(T::one(), T::zero());
        Self { matrix: m }
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix<T> {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn qubits(&self) -> u32 {
        self.dim().trailing_zeros()
    }

    /// `Tr rho^2`
    pub fn purity(&self) -> T {
        self.matrix.trace_product(&self.matrix).re
    }

    pub fn conj(&self) -> Self {
        Self { matrix: self.matrix.conj() }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.matrix.max_abs_diff(&other.matrix)
    }
}

impl DensityMatrix<f64> {
    /// Smallest eigenvalue of the Hermitian part.
    pub fn min_eigenvalue(&self) -> f64 {
        let m = self.matrix.to_nalgebra();
        let h = (&m + m.adjoint()) * nalgebra::Complex::new(0.5, 0.0);
        h.symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Logs a warning when the state has eigenvalues below `-1e-8`.
    pub fn warn_if_not_psd(&self) -> bool {
        let min = self.min_eigenvalue();
        if min < -PSD_TOL {
            log::warn!("density matrix has a negative eigenvalue {min:e}");
            return false;
        }
        true
    }
}

/// Real vector of length N^2 indexed by `int(q) * N + int(p)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DwfVector<T> {
    qubits: u32,
    values: Vec<T>,
}

impl<T: Scalar> DwfVector<T> {
    pub fn new(qubits: u32, values: Vec<T>) -> Result<Self> {
        let expected = 1usize << (2 * qubits);
        if values.len() != expected {
            return Err(Error::DimensionMismatch { expected, got: values.len() });
        }
        Ok(Self { qubits, values })
    }

    /// The unit vector `e_alpha`.
    pub fn indicator(qubits: u32, index: usize) -> Self {
        let mut values = vec![T::zero(); 1 << (2 * qubits)];
        values[index] = T::one();
        Self { qubits, values }
    }

    pub fn qubits(&self) -> u32 {
        self.qubits
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    pub fn sum(&self) -> T {
        self.values.iter().cloned().fold(T::zero(), |a, b| a + b)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a.clone() - b.clone()).abs_f64())
            .fold(0.0, f64::max)
    }

    pub fn to_f64(&self) -> DwfVector<f64> {
        DwfVector { qubits: self.qubits, values: self.values.iter().map(|v| v.to_f64()).collect() }
    }
}

impl<T: Scalar> std::ops::Index<usize> for DwfVector<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.values[i]
    }
}

/// The N^2 phase-point operators of one quantum net.
#[derive(Debug, Clone, PartialEq)]
pub struct PhasePointSet<T> {
    space: PhaseSpace,
    net: QuantumNet,
    operators: Vec<CMatrix<T>>,
    line_projectors: Vec<Vec<CMatrix<T>>>,
}

impl<T: Scalar> PhasePointSet<T> {
    pub fn space(&self) -> &PhaseSpace {
        &self.space
    }

    pub fn net(&self) -> &QuantumNet {
        &self.net
    }

    pub fn operators(&self) -> &[CMatrix<T>] {
        &self.operators
    }

    pub fn operator(&self, a: PhasePoint) -> &CMatrix<T> {
        &self.operators[self.space.point_index(a)]
    }

    /// The projector the net assigns to `line`.
    pub fn line_projector(&self, line: LineId) -> &CMatrix<T> {
        &self.line_projectors[line.striation][line.index]
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    fn check_dim(&self, got: usize) -> Result<()> {
        if got != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got });
        }
        Ok(())
    }
}

/// Builds `A_alpha` for every point and verifies Hermiticity, `Tr A = 1` and
/// `P_lambda = (1/N) sum_{alpha ∈ lambda} A_alpha` on every line.
pub fn phase_point_operators<T: Scalar>(net: &QuantumNet, mubs: &MubCollection<T>) -> Result<PhasePointSet<T>> {
    let space = mubs.space().clone();
    let dim = space.dim();
    if net.dim() != dim {
        return Err(Error::InvalidNet { expected: dim + 1, dim, got: net.offsets().to_vec() });
    }
    let origin: Vec<&CMatrix<T>> =
        (0..space.num_striations()).map(|k| mubs.projector(LineId::new(k, net.offset(k)))).collect();
    let id = CMatrix::<T>::identity(dim);
    let a0 = origin.iter().fold(id.scale_real(&-T::one()), |acc, q| &acc + q);

    let operators: Vec<CMatrix<T>> =
        space.points().map(|a| a0.conjugate_by(&space.translation_unitary::<T>(a))).collect();
    let line_projectors: Vec<Vec<CMatrix<T>>> = (0..space.num_striations())
        .map(|k| {
            (0..dim)
                .map(|i| {
                    let g = space.line_representative(LineId::new(k, i));
                    origin[k].conjugate_by(&space.translation_unitary::<T>(g))
                })
                .collect()
        })
        .collect();

    let set = PhasePointSet { space, net: net.clone(), operators, line_projectors };
    verify_phase_points(&set)?;
    Ok(set)
}

fn verify_phase_points<T: Scalar>(set: &PhasePointSet<T>) -> Result<()> {
    let space = &set.space;
    let inv_n = T::ratio(1, set.dim() as i64);
    for (idx, a) in set.operators.iter().enumerate() {
        let herm = a.hermiticity_error();
        let tr = a.trace();
        let tr_err = (tr.re.to_f64() - 1.0).abs().max(tr.im.abs_f64());
        if herm > ALGEBRAIC_TOL || tr_err > ALGEBRAIC_TOL {
            return Err(Error::PhasePoint(format!(
                "A at {} has Hermiticity error {herm:e} and trace error {tr_err:e}",
                space.point(idx)
            )));
        }
    }
    for line in space.lines() {
        let sum = space
            .line_points(line)
            .into_iter()
            .fold(CMatrix::zeros(set.dim()), |acc, a| &acc + set.operator(a))
            .scale_real(&inv_n);
        let err = sum.max_abs_diff(set.line_projector(line));
        if err > ALGEBRAIC_TOL {
            return Err(Error::PhasePoint(format!(
                "line {line:?}: (1/N) sum of A differs from its projector by {err:e}"
            )));
        }
    }
    Ok(())
}

/// `W_alpha = Tr(rho A_alpha) / N`.
pub fn dwf<T: Scalar>(rho: &DensityMatrix<T>, ops: &PhasePointSet<T>) -> Result<DwfVector<T>> {
    ops.check_dim(rho.dim())?;
    let inv_n = T::ratio(1, ops.dim() as i64);
    let values = ops.operators.iter().map(|a| rho.matrix().trace_product(a).re * inv_n.clone()).collect();
    DwfVector::new(ops.space.qubits(), values)
}

/// `rho = sum_alpha W_alpha A_alpha`. The result is linear in `W` and is not
/// validated as a state.
pub fn density_from_dwf<T: Scalar>(w: &DwfVector<T>, ops: &PhasePointSet<T>) -> Result<DensityMatrix<T>> {
    if w.len() != ops.operators.len() {
        return Err(Error::DimensionMismatch { expected: ops.operators.len(), got: w.len() });
    }
    let rho = w
        .values()
        .iter()
        .zip(&ops.operators)
        .filter(|(wa, _)| !wa.is_zero())
        .fold(CMatrix::zeros(ops.dim()), |acc, (wa, a)| &acc + &a.scale_real(wa));
    Ok(DensityMatrix::new_unchecked(rho))
}

/// `p_lambda = Tr(rho P_lambda)` for every line.
pub fn line_probabilities<T: Scalar>(rho: &DensityMatrix<T>, ops: &PhasePointSet<T>) -> Result<LineProbabilities<T>> {
    ops.check_dim(rho.dim())?;
    Ok(ops
        .space
        .lines()
        .map(|line| (line, rho.matrix().trace_product(ops.line_projector(line)).re))
        .collect())
}

/// `W_alpha = (1/N) (sum_{lambda ∋ alpha} p_lambda - 1)`.
pub fn dwf_from_probabilities<T: Scalar>(probs: &LineProbabilities<T>, space: &PhaseSpace) -> Result<DwfVector<T>> {
    let inv_n = T::ratio(1, space.dim() as i64);
    let values = space
        .points()
        .map(|a| {
            let mut acc = -T::one();
            for line in space.lines_through_point(a) {
                acc = acc + probs.get(&line).cloned().ok_or(Error::MissingLine(line))?;
            }
            Ok(acc * inv_n.clone())
        })
        .collect::<Result<Vec<_>>>()?;
    DwfVector::new(space.qubits(), values)
}

/// Sum of the DWF along a line.
pub fn line_sum<T: Scalar>(w: &DwfVector<T>, space: &PhaseSpace, line: LineId) -> T {
    space.line_points(line).into_iter().fold(T::zero(), |acc, a| acc + w[space.point_index(a)].clone())
}
