//! The N x N phase space over GF(N): points, lines, striations, quantum nets
//! and phase-space translations.
//!
//! Points are written `(q, p)`. A DWF vector is indexed by
//! `int(q) * N + int(p)`, so `p` runs fastest. Striation 0 holds the vertical
//! lines `q = c`; striation `k >= 1` holds the lines `p = s q + c` with slope
//! `s = element(k - 1)`. Inside a striation, line `index` is the one with
//! `c = element(index)`, so index 0 always passes through the origin.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite_field::{dual_basis, CoordinateBasis, FieldElement, FieldSpec};
use crate::linalg::{CMatrix, Permutation};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PhasePoint {
    pub q: FieldElement,
    pub p: FieldElement,
}

impl PhasePoint {
    pub const ORIGIN: Self = Self { q: FieldElement::ZERO, p: FieldElement::ZERO };

    pub fn new(q: FieldElement, p: FieldElement) -> Self {
        Self { q, p }
    }
}

impl fmt::Display for PhasePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.q, self.p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LineId {
    pub striation: usize,
    pub index: usize,
}

impl LineId {
    pub fn new(striation: usize, index: usize) -> Self {
        Self { striation, index }
    }
}

/// Which basis vector of each striation is attached to that striation's
/// origin line; the rest of the net follows from translational covariance.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuantumNet {
    offsets: Vec<usize>,
}

impl QuantumNet {
    pub fn new(offsets: Vec<usize>, dim: usize) -> Result<Self> {
        if offsets.len() != dim + 1 || offsets.iter().any(|&o| o >= dim) {
            return Err(Error::InvalidNet { expected: dim + 1, dim, got: offsets });
        }
        Ok(Self { offsets })
    }

    pub fn zero(dim: usize) -> Self {
        Self { offsets: vec![0; dim + 1] }
    }

    /// Net number `code` in the mixed-radix enumeration of all `N^(N+1)` nets.
    pub fn from_code(mut code: u64, dim: usize) -> Self {
        let offsets = (0..=dim)
            .map(|_| {
                let o = (code % dim as u64) as usize;
                code /= dim as u64;
                o
            })
            .collect();
        Self { offsets }
    }

    /// Total number of nets, `N^(N+1)`; `None` on overflow.
    pub fn count(dim: usize) -> Option<u64> {
        (dim as u64).checked_pow(dim as u32 + 1)
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn offset(&self, striation: usize) -> usize {
        self.offsets[striation]
    }

    pub fn dim(&self) -> usize {
        self.offsets.len() - 1
    }
}

impl FromStr for QuantumNet {
    type Err = Error;

    /// Comma-separated offsets, e.g. `0,1,0,3,2`.
    fn from_str(s: &str) -> Result<Self> {
        let offsets = s
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Format(format!("bad net offset {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        let dim = offsets.len().saturating_sub(1);
        Self::new(offsets, dim)
    }
}

impl fmt::Display for QuantumNet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.offsets.iter().map(|o| o.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// A translation `beta` together with the coordinate bases used to expand it
/// into `sigma_x^{q_i} sigma_z^{p_i}` factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslationLabel {
    pub beta: PhasePoint,
    pub horizontal: CoordinateBasis,
    pub vertical: CoordinateBasis,
}

impl TranslationLabel {
    /// X and Z masks in computational-index layout (qubit 0 is the most significant bit).
    pub fn pauli_masks(&self) -> (usize, usize) {
        let n = self.horizontal.len();
        let flip = |mask: u32| (0..n).fold(0usize, |acc, i| acc | ((((mask >> i) & 1) as usize) << (n - 1 - i)));
        (flip(self.horizontal.coord_mask(self.beta.q)), flip(self.vertical.coord_mask(self.beta.p)))
    }

    /// Number of qubits carrying `sigma_x sigma_z` (a `sigma_y` up to phase).
    pub fn y_count(&self) -> u32 {
        let (x, z) = self.pauli_masks();
        (x & z).count_ones()
    }
}

/// `T = ⊗_i sigma_x^{q_i} sigma_z^{p_i}` with the phase exactly as produced by the product.
pub fn translation_unitary<T: Scalar>(label: &TranslationLabel) -> CMatrix<T> {
    let (x, z) = label.pauli_masks();
    let dim = 1usize << label.horizontal.len();
    let mut m = CMatrix::zeros(dim);
    for k in 0..dim {
        // sigma_x^x sigma_z^z |k> = (-1)^{z.k} |k ^ x>
        let sign = if (z & k).count_ones() % 2 == 0 { T::one() } else { -T::one() };
        m[(k ^ x, k)] = Complex::new(sign, T::zero());
    }
    m
}

/// `i^{#Y} T`, the Hermitian Pauli operator with eigenvalues +-1.
pub fn hermitian_pauli<T: Scalar>(label: &TranslationLabel) -> CMatrix<T> {
    let phase = match label.y_count() % 4 {
        0 => Complex::one(),
        1 => Complex::i(),
        2 => -Complex::one(),
        _ => -Complex::i(),
    };
    translation_unitary::<T>(label).scale(&phase)
}

/// GF(N) x GF(N) with a fixed pair of coordinate bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhaseSpace {
    field: FieldSpec,
    horizontal: CoordinateBasis,
    vertical: CoordinateBasis,
}

impl PhaseSpace {
    /// Descending polynomial basis horizontally, its trace dual vertically.
    pub fn new(field: FieldSpec) -> Self {
        let horizontal = field.polynomial_basis();
        let vertical = dual_basis(&field, &horizontal);
        Self { field, horizontal, vertical }
    }

    pub fn with_bases(field: FieldSpec, horizontal: CoordinateBasis, vertical: CoordinateBasis) -> Self {
        Self { field, horizontal, vertical }
    }

    /// Vertical basis equal to the horizontal one; `(ω,1)` on both axes is the
    /// GF(4) configuration used in the literature's worked two-qubit example.
    pub fn with_equal_bases(field: FieldSpec, horizontal: CoordinateBasis) -> Self {
        Self { field, vertical: horizontal.clone(), horizontal }
    }

    pub fn with_default_poly(n: u32) -> Result<Self> {
        Ok(Self::new(FieldSpec::with_default_poly(n)?))
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn horizontal(&self) -> &CoordinateBasis {
        &self.horizontal
    }

    pub fn vertical(&self) -> &CoordinateBasis {
        &self.vertical
    }

    pub fn qubits(&self) -> u32 {
        self.field.n()
    }

    /// N
    pub fn dim(&self) -> usize {
        self.field.order()
    }

    /// N^2
    pub fn num_points(&self) -> usize {
        self.dim() * self.dim()
    }

    pub fn num_striations(&self) -> usize {
        self.dim() + 1
    }

    pub fn point_index(&self, a: PhasePoint) -> usize {
        a.q.index() * self.dim() + a.p.index()
    }

    pub fn point(&self, index: usize) -> PhasePoint {
        let n = self.dim();
        PhasePoint::new(self.field.el(index / n), self.field.el(index % n))
    }

    /// All points in vectorization order.
    pub fn points(&self) -> impl Iterator<Item = PhasePoint> + '_ {
        (0..self.num_points()).map(|i| self.point(i))
    }

    pub fn add(&self, a: PhasePoint, b: PhasePoint) -> PhasePoint {
        PhasePoint::new(self.field.add(a.q, b.q), self.field.add(a.p, b.p))
    }

    /// Slope of striation `k >= 1`; `None` for the vertical striation.
    pub fn slope(&self, striation: usize) -> Option<FieldElement> {
        (striation >= 1).then(|| self.field.el(striation - 1))
    }

    pub fn lines(&self) -> impl Iterator<Item = LineId> + '_ {
        (0..self.num_striations()).flat_map(move |s| (0..self.dim()).map(move |i| LineId::new(s, i)))
    }

    pub fn line_points(&self, line: LineId) -> Vec<PhasePoint> {
        let c = self.field.el(line.index);
        match self.slope(line.striation) {
            None => self.field.elements().map(|p| PhasePoint::new(c, p)).collect(),
            Some(s) => self
                .field
                .elements()
                .map(|q| PhasePoint::new(q, self.field.add(self.field.mul(s, q), c)))
                .collect(),
        }
    }

    /// The line of `striation` containing `a`.
    pub fn line_through(&self, a: PhasePoint, striation: usize) -> LineId {
        let c = match self.slope(striation) {
            None => a.q,
            Some(s) => self.field.add(a.p, self.field.mul(s, a.q)),
        };
        LineId::new(striation, c.index())
    }

    /// One line per striation, in striation order.
    pub fn lines_through_point(&self, a: PhasePoint) -> Vec<LineId> {
        (0..self.num_striations()).map(|s| self.line_through(a, s)).collect()
    }

    /// A point `g` with `line = (origin line of its striation) + g`.
    pub fn line_representative(&self, line: LineId) -> PhasePoint {
        let c = self.field.el(line.index);
        match line.striation {
            0 => PhasePoint::new(c, FieldElement::ZERO),
            _ => PhasePoint::new(FieldElement::ZERO, c),
        }
    }

    /// Points of the origin ray of `striation` that span it over GF(2):
    /// `(0, f_i)` for the vertical ray, `(e_i, s e_i)` otherwise.
    pub fn ray_generators(&self, striation: usize) -> Vec<PhasePoint> {
        match self.slope(striation) {
            None => self.vertical.elements().iter().map(|&f| PhasePoint::new(FieldElement::ZERO, f)).collect(),
            Some(s) => self
                .horizontal
                .elements()
                .iter()
                .map(|&e| PhasePoint::new(e, self.field.mul(s, e)))
                .collect(),
        }
    }

    pub fn label(&self, beta: PhasePoint) -> TranslationLabel {
        TranslationLabel { beta, horizontal: self.horizontal.clone(), vertical: self.vertical.clone() }
    }

    pub fn translation_unitary<T: Scalar>(&self, beta: PhasePoint) -> CMatrix<T> {
        translation_unitary(&self.label(beta))
    }

    pub fn hermitian_pauli<T: Scalar>(&self, beta: PhasePoint) -> CMatrix<T> {
        hermitian_pauli(&self.label(beta))
    }

    /// Binary symplectic product of the Pauli operators at `a` and `b`:
    /// 0 when `T_a` and `T_b` commute, 1 when they anticommute.
    pub fn symplectic(&self, a: PhasePoint, b: PhasePoint) -> u8 {
        let (ax, az) = self.label(a).pauli_masks();
        let (bx, bz) = self.label(b).pauli_masks();
        (((ax & bz).count_ones() + (az & bx).count_ones()) % 2) as u8
    }

    /// Permutation `P` of DWF vectors with `P[idx(a), idx(a + beta)] = 1`,
    /// so `(P W)_a = W_{a+beta}`.
    pub fn translation_permutation(&self, beta: PhasePoint) -> Permutation {
        let map = self.points().map(|a| self.point_index(self.add(a, beta))).collect();
        Permutation::new(map).expect("translation is a bijection")
    }
}
