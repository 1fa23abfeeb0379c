//! The N+1 mutually unbiased bases attached to the striations.
//!
//! Basis `k` is the joint eigenbasis of the translations along the origin ray
//! of striation `k`. Each joint eigenvector is obtained exactly from the
//! stabilizer projector `prod_i (I + s_i G_i) / 2`, where `G_i` are the
//! Hermitian Pauli operators of the ray generators and `s_i = +-1`. Vector
//! `j` of a basis has sign pattern `s_i = (-1)^{bit}` read from `j` with the
//! first generator as the most significant bit, so index 0 is the all-`+1`
//! vector.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::phase_space::{LineId, PhasePoint, PhaseSpace};
use crate::scalar::{RealScalar, Scalar};

/// Tolerance for the MUB and conjugation identities.
pub const MUB_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct BasisSet<T> {
    striation: usize,
    generators: Vec<PhasePoint>,
    projectors: Vec<CMatrix<T>>,
}

impl<T: Scalar> BasisSet<T> {
    pub fn striation(&self) -> usize {
        self.striation
    }

    pub fn generators(&self) -> &[PhasePoint] {
        &self.generators
    }

    pub fn projectors(&self) -> &[CMatrix<T>] {
        &self.projectors
    }

    pub fn projector(&self, j: usize) -> &CMatrix<T> {
        &self.projectors[j]
    }

    pub fn len(&self) -> usize {
        self.projectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.projectors.is_empty()
    }
}

impl<T: RealScalar> BasisSet<T> {
    /// Unit vectors whose first nonzero component is real and positive.
    pub fn vectors(&self) -> Vec<Vec<Complex<T>>> {
        self.projectors.iter().map(|p| phase_fixed_vector(p)).collect()
    }

    /// The unitary whose columns are [`Self::vectors`].
    pub fn matrix(&self) -> CMatrix<T> {
        let vs = self.vectors();
        CMatrix::from_fn(vs.len(), |i, j| vs[j][i])
    }
}

/// Column `c` of a rank-one projector `|v><v|` is `v * conj(v_c)`; taking the
/// first `c` with `P_cc > 0` and dividing by `sqrt(P_cc)` fixes the phase.
fn phase_fixed_vector<T: RealScalar>(p: &CMatrix<T>) -> Vec<Complex<T>> {
    let n = p.dim();
    let threshold = T::from(1e-12).unwrap();
    let c = (0..n).find(|&i| p[(i, i)].re > threshold).unwrap_or(0);
    let norm = p[(c, c)].re.sqrt();
    (0..n).map(|i| p[(i, c)] / norm).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct MubCollection<T> {
    space: PhaseSpace,
    bases: Vec<BasisSet<T>>,
}

impl<T: Scalar> MubCollection<T> {
    pub fn space(&self) -> &PhaseSpace {
        &self.space
    }

    pub fn bases(&self) -> &[BasisSet<T>] {
        &self.bases
    }

    pub fn basis(&self, striation: usize) -> &BasisSet<T> {
        &self.bases[striation]
    }

    pub fn projector(&self, line: LineId) -> &CMatrix<T> {
        self.bases[line.striation].projector(line.index)
    }

    /// Checks `Tr(P P') = (1/N)(1 - δ_kk') + δ_kk' δ_jj'` for every pair of
    /// basis projectors; returns the largest deviation.
    pub fn check_mub_law(&self, tol: f64) -> Result<f64> {
        let n = self.space.dim();
        let inv_n = 1.0 / n as f64;
        let mut worst = 0.0f64;
        for (k1, b1) in self.bases.iter().enumerate() {
            for (j1, p1) in b1.projectors.iter().enumerate() {
                let herm = p1.hermiticity_error();
                if herm > tol {
                    return Err(Error::MubViolation {
                        detail: format!("projector ({k1},{j1}) is not Hermitian (error {herm:e})"),
                    });
                }
                for (k2, b2) in self.bases.iter().enumerate().skip(k1) {
                    for (j2, p2) in b2.projectors.iter().enumerate() {
                        if k2 == k1 && j2 < j1 {
                            continue;
                        }
                        let expected = if k1 != k2 { inv_n } else if j1 == j2 { 1.0 } else { 0.0 };
                        let z = p1.trace_product(p2);
                        let dev = (z.re.to_f64() - expected).abs().max(z.im.abs_f64());
                        worst = worst.max(dev);
                        if dev > tol {
                            return Err(Error::MubViolation {
                                detail: format!(
                                    "|<u|v>|^2 = {} for vectors ({k1},{j1}) and ({k2},{j2}), expected {expected}",
                                    z.re.to_f64()
                                ),
                            });
                        }
                    }
                }
            }
        }
        Ok(worst)
    }

    /// Adds `eps` to the `(0,1)` and `(1,0)` entries of one projector. Only
    /// useful to exercise failure paths.
    pub fn perturbed(&self, line: LineId, eps: T) -> Self {
        let mut out = self.clone();
        let p = &mut out.bases[line.striation].projectors[line.index];
        let e = Complex::new(eps, T::zero());
        p[(0, 1)] = p[(0, 1)].clone() + e.clone();
        p[(1, 0)] = p[(1, 0)].clone() + e;
        out
    }

    pub fn to_f64(&self) -> MubCollection<f64> {
        MubCollection {
            space: self.space.clone(),
            bases: self
                .bases
                .iter()
                .map(|b| BasisSet {
                    striation: b.striation,
                    generators: b.generators.clone(),
                    projectors: b.projectors.iter().map(|p| p.to_f64()).collect(),
                })
                .collect(),
        }
    }
}

/// Builds the N+1 MUBs for `space`, then verifies the MUB law.
///
/// Fails when the ray operators of some striation do not commute (the basis
/// pairing is not symplectic) or when the resulting bases are not mutually
/// unbiased.
pub fn build_mubs<T: Scalar>(space: &PhaseSpace) -> Result<MubCollection<T>> {
    let n_qubits = space.qubits() as usize;
    let dim = space.dim();
    let half = T::ratio(1, 2);
    let mut bases = Vec::with_capacity(space.num_striations());
    for striation in 0..space.num_striations() {
        let generators = space.ray_generators(striation);
        for (i, a) in generators.iter().enumerate() {
            for b in &generators[i + 1..] {
                if space.symplectic(*a, *b) != 0 {
                    return Err(Error::NonCommutingRay { striation });
                }
            }
        }
        let paulis: Vec<CMatrix<T>> = generators.iter().map(|&g| space.hermitian_pauli(g)).collect();
        let id = CMatrix::<T>::identity(dim);
        let projectors = (0..dim)
            .map(|j| {
                paulis.iter().enumerate().fold(id.clone(), |acc, (i, g)| {
                    let minus = (j >> (n_qubits - 1 - i)) & 1 == 1;
                    let signed = if minus { g.scale_real(&-T::one()) } else { g.clone() };
                    let factor = (&id + &signed).scale_real(&half);
                    &acc * &factor
                })
            })
            .collect();
        bases.push(BasisSet { striation, generators, projectors });
    }
    let mubs = MubCollection { space: space.clone(), bases };
    mubs.check_mub_law(MUB_TOL)?;
    Ok(mubs)
}

/// Outcome of [`check_conjugation_structure`].
#[derive(Debug, Clone, PartialEq)]
pub struct ConjugationReport {
    /// `conjugate_index[k][j]` = index `j'` with `conj(P_kj) = P_kj'`.
    pub conjugate_index: Vec<Vec<usize>>,
    /// Largest deviation from the expected `Tr[Q Q*]` pattern.
    pub max_deviation: f64,
}

/// Verifies `Tr[Q Q*]`: 1 for each projector of striations 0 and 1, 0 for the
/// same projector of striations >= 2, `1/N` across striations, and that
/// conjugation maps every basis onto itself.
pub fn check_conjugation_structure<T: Scalar>(m: &MubCollection<T>, tol: f64) -> Result<ConjugationReport> {
    let inv_n = 1.0 / m.space.dim() as f64;
    let mut max_deviation = 0.0f64;
    let mut conjugate_index = Vec::with_capacity(m.bases.len());
    for (k1, b1) in m.bases.iter().enumerate() {
        let mut images = Vec::with_capacity(b1.len());
        for (j1, q1) in b1.projectors.iter().enumerate() {
            let mut image = None;
            for (k2, b2) in m.bases.iter().enumerate() {
                for (j2, q2) in b2.projectors.iter().enumerate() {
                    let z = q1.trace_product_conj(q2);
                    let value = z.re.to_f64();
                    let expected = if k1 != k2 {
                        Some(inv_n)
                    } else if j1 == j2 {
                        Some(if k1 <= 1 { 1.0 } else { 0.0 })
                    } else {
                        None
                    };
                    let dev = z.im.abs_f64().max(match expected {
                        Some(e) => (value - e).abs(),
                        None => value.abs().min((value - 1.0).abs()),
                    });
                    max_deviation = max_deviation.max(dev);
                    if dev > tol {
                        return Err(Error::ConjugationViolation {
                            a: LineId::new(k1, j1),
                            b: LineId::new(k2, j2),
                            value,
                            expected: expected.unwrap_or(f64::NAN),
                        });
                    }
                    if k1 == k2 && (value - 1.0).abs() <= tol {
                        image = Some(j2);
                    }
                }
            }
            let Some(image) = image else {
                return Err(Error::ConjugationViolation {
                    a: LineId::new(k1, j1),
                    b: LineId::new(k1, j1),
                    value: 0.0,
                    expected: 1.0,
                });
            };
            images.push(image);
        }
        conjugate_index.push(images);
    }
    Ok(ConjugationReport { conjugate_index, max_deviation })
}

/// Whether two families of projectors span the same set of rays.
pub fn same_rays<T: Scalar>(a: &[CMatrix<T>], b: &[CMatrix<T>], tol: f64) -> bool {
    a.len() == b.len() && a.iter().all(|p| b.iter().any(|q| p.max_abs_diff(q) <= tol))
}

/// `<u|v>`
pub fn inner<T: Scalar>(u: &[Complex<T>], v: &[Complex<T>]) -> Complex<T> {
    u.iter().zip(v).fold(Complex::zero(), |acc, (a, b)| acc + a.conj() * b.clone())
}

/// Whether conjugation fixes every projector of `basis` (a real basis).
pub fn is_real_basis<T: Scalar>(basis: &BasisSet<T>, tol: f64) -> bool {
    basis.projectors.iter().all(|p| p.max_abs_diff(&p.conj()) <= tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_field::FieldSpec;
    use num_rational::BigRational;

    fn mubs(n: u32) -> MubCollection<f64> {
        build_mubs(&PhaseSpace::with_default_poly(n).unwrap()).unwrap()
    }

    #[test]
    fn counts_and_computational_basis() {
        for n in 1..=3 {
            let m = mubs(n);
            let dim = 1usize << n;
            assert_eq!(m.bases().len(), dim + 1);
            assert!(m.bases().iter().all(|b| b.len() == dim));
            assert!(m.basis(0).matrix().max_abs_diff(&CMatrix::identity(dim)) < 1e-15);
        }
    }

    #[test]
    fn single_qubit_sigma_y_basis() {
        let m = mubs(1);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let v = m.basis(2).vectors();
        // +1 eigenvector of sigma_y first
        assert!((v[0][0] - Complex::new(s, 0.0)).norm() < 1e-15);
        assert!((v[0][1] - Complex::new(0.0, s)).norm() < 1e-15);
        assert!((v[1][1] - Complex::new(0.0, -s)).norm() < 1e-15);
    }

    #[test]
    fn eigenvector_property_along_each_ray() {
        for n in 1..=3 {
            let m = mubs(n);
            let space = m.space();
            for b in m.bases() {
                let ray = space.line_points(LineId::new(b.striation(), 0));
                for v in b.vectors() {
                    for a in &ray {
                        let t: CMatrix<f64> = space.translation_unitary(*a);
                        let tv = t.mul_vec(&v);
                        let lambda = inner(&v, &tv);
                        assert!((lambda.norm() - 1.0).abs() < 1e-12);
                        let diff: f64 = tv.iter().zip(&v).map(|(x, y)| (x - lambda * y).norm()).fold(0.0, f64::max);
                        assert!(diff < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn ordering_follows_eigenvalue_pattern() {
        let m = mubs(2);
        let space = m.space();
        for b in m.bases() {
            for (j, v) in b.vectors().iter().enumerate() {
                for (i, g) in b.generators().iter().enumerate() {
                    let gv = space.hermitian_pauli::<f64>(*g).mul_vec(v);
                    let eig = inner(v, &gv).re;
                    let expected = if (j >> (1 - i)) & 1 == 1 { -1.0 } else { 1.0 };
                    assert!((eig - expected).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn phase_convention_first_nonzero_real_positive() {
        for b in mubs(3).bases() {
            for v in b.vectors() {
                let first = v.iter().find(|z| z.norm() > 1e-12).unwrap();
                assert!(first.im.abs() < 1e-15 && first.re > 0.0);
            }
        }
    }

    #[test]
    fn mub_law_exhaustive_through_n4() {
        for n in 1..=4 {
            assert!(mubs(n).check_mub_law(MUB_TOL).unwrap() < MUB_TOL);
        }
    }

    #[test]
    fn exact_construction_has_zero_deviation() {
        let m: MubCollection<BigRational> = build_mubs(&PhaseSpace::with_default_poly(2).unwrap()).unwrap();
        assert_eq!(m.check_mub_law(0.0).unwrap(), 0.0);
    }

    #[test]
    fn conjugation_structure() {
        for n in 1..=3 {
            let m = mubs(n);
            let report = check_conjugation_structure(&m, MUB_TOL).unwrap();
            assert_eq!(report.conjugate_index[0], (0..1 << n).collect::<Vec<_>>());
            assert_eq!(report.conjugate_index[1], (0..1 << n).collect::<Vec<_>>());
            for k in 2..m.bases().len() {
                assert!(report.conjugate_index[k].iter().enumerate().all(|(j, &c)| c != j));
                assert!(!is_real_basis(m.basis(k), 1e-12));
            }
            assert!(is_real_basis(m.basis(0), 0.0) && is_real_basis(m.basis(1), 0.0));
        }
        // n = 1: conjugation swaps the sigma_y eigenvectors
        let r = check_conjugation_structure(&mubs(1), MUB_TOL).unwrap();
        assert_eq!(r.conjugate_index[2], vec![1, 0]);
        // n = 2 cross-striation value
        let m = mubs(2);
        let z = m.basis(1).projector(0).trace_product_conj(m.basis(3).projector(2));
        assert!((z.re - 0.25).abs() < 1e-12);
    }

    #[test]
    fn perturbed_collection_fails_checks() {
        let m = mubs(1).perturbed(LineId::new(2, 0), 1e-3);
        assert!(m.check_mub_law(MUB_TOL).is_err());
    }

    #[test]
    fn non_symplectic_pairing_is_rejected() {
        // vertical basis (1, ω) with horizontal (ω, 1) is neither dual nor a scaled dual
        let f = FieldSpec::with_default_poly(2).unwrap();
        let h = f.polynomial_basis();
        let v = crate::finite_field::CoordinateBasis::from_bits(&f, &[1, 2]).unwrap();
        let space = PhaseSpace::with_bases(f, h, v);
        assert!(matches!(build_mubs::<f64>(&space), Err(Error::NonCommutingRay { .. })));
    }
}
