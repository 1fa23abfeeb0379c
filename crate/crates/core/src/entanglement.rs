//! Spin-flipped states and Wootters concurrence.

use nalgebra::DMatrix;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::scalar::Scalar;
use crate::spinflip::SpinFlipMatrix;
use crate::wigner::{density_from_dwf, DensityMatrix, DwfVector, PhasePointSet, PSD_TOL};

/// Eigenvalues of `R` with modulus below this are treated as zero. `||R|| <= 1`
/// for states, so smaller values are below the eigensolver's resolution, and
/// taking their square root would turn round-off into ~1e-8 noise.
pub const LAMBDA_RESOLUTION: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ConcurrenceResult {
    pub concurrence: f64,
    /// Square roots of the eigenvalues of `rho rho~`, descending.
    pub lambdas: Vec<f64>,
}

/// `rho~ = sigma_y^{⊗n} conj(rho) sigma_y^{⊗n}`.
pub fn spin_flip_density<T: Scalar>(rho: &DensityMatrix<T>) -> DensityMatrix<T> {
    DensityMatrix::new_unchecked(spin_flip_matrix(rho.matrix()))
}

fn spin_flip_matrix<T: Scalar>(m: &CMatrix<T>) -> CMatrix<T> {
    // sigma_y^{⊗n} = phase * X^{⊗n} Z^{⊗n}; the phase cancels.
    let dim = m.dim();
    let flip = dim - 1;
    CMatrix::from_fn(dim, |a, b| {
        let (a0, b0) = (a ^ flip, b ^ flip);
        let z = m[(a0, b0)].conj();
        if (a0.count_ones() + b0.count_ones()) % 2 == 0 {
            z
        } else {
            -z
        }
    })
}

/// Square roots of the eigenvalues of `R = rho rho~`, sorted descending.
///
/// Uses a general (Schur) eigensolver since `R` is not Hermitian. Imaginary
/// parts above 1e-8 are logged and dropped, as are negative parts.
pub fn r_spectrum(rho: &DensityMatrix<f64>) -> Result<Vec<f64>> {
    let m = rho.matrix();
    r_spectrum_of(m, &spin_flip_matrix(m))
}

fn r_spectrum_of(rho: &CMatrix<f64>, flipped: &CMatrix<f64>) -> Result<Vec<f64>> {
    let r: DMatrix<Complex<f64>> = (rho * flipped).to_nalgebra();
    let eig = r.eigenvalues().ok_or(Error::Eigen)?;
    let mut out: Vec<f64> = eig
        .iter()
        .map(|z| {
            if z.im.abs() > PSD_TOL {
                log::warn!("R eigenvalue {z} has a non-negligible imaginary part");
            }
            if z.re < -PSD_TOL {
                log::warn!("R eigenvalue {} is negative", z.re);
            }
            if z.re.abs() < LAMBDA_RESOLUTION {
                0.0
            } else {
                z.re.max(0.0).sqrt()
            }
        })
        .collect();
    out.sort_by(|a, b| b.total_cmp(a));
    Ok(out)
}

fn from_lambdas(lambdas: Vec<f64>) -> ConcurrenceResult {
    let c = lambdas[0] - lambdas[1..].iter().sum::<f64>();
    ConcurrenceResult { concurrence: c.clamp(0.0, 1.0), lambdas }
}

/// `C = max(0, l1 - l2 - l3 - l4)` for a two-qubit state.
pub fn concurrence(rho: &DensityMatrix<f64>) -> Result<ConcurrenceResult> {
    if rho.dim() != 4 {
        return Err(Error::NotTwoQubit(rho.dim()));
    }
    Ok(from_lambdas(r_spectrum(rho)?))
}

/// Concurrence computed from the DWF and its spin flip: `rho` is rebuilt from
/// `W` and `rho~` from `H W`.
pub fn concurrence_from_dwf(
    w: &DwfVector<f64>,
    h: &SpinFlipMatrix<f64>,
    ops: &PhasePointSet<f64>,
) -> Result<ConcurrenceResult> {
    if ops.dim() != 4 {
        return Err(Error::NotTwoQubit(ops.dim()));
    }
    let rho = density_from_dwf(w, ops)?;
    let flipped = density_from_dwf(&h.apply(w)?, ops)?;
    Ok(from_lambdas(r_spectrum_of(rho.matrix(), flipped.matrix())?))
}

/// `|<psi| sigma_y ⊗ sigma_y |psi*>| = 2 |a d - b c|` for a two-qubit pure state.
pub fn concurrence_pure_oracle(psi: &[Complex<f64>]) -> Result<f64> {
    if psi.len() != 4 {
        return Err(Error::NotTwoQubit(psi.len()));
    }
    let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(Error::NotNormalized(norm));
    }
    Ok(2.0 * (psi[0] * psi[3] - psi[1] * psi[2]).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mub::build_mubs;
    use crate::phase_space::{PhaseSpace, QuantumNet};
    use crate::sampling::{random_local_unitary, random_pure};
    use crate::spinflip::{build_h, build_s, build_sigma_y_t};
    use crate::wigner::{dwf, phase_point_operators};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64) -> Complex<f64> {
        Complex::new(re, 0.0)
    }

    fn bell() -> Vec<Complex<f64>> {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        vec![c(r), c(0.0), c(0.0), c(r)]
    }

    fn werner(p: f64) -> DensityMatrix<f64> {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let singlet = CMatrix::outer(&[c(0.0), c(r), c(-r), c(0.0)]);
        let m = &singlet.scale_real(&p) + &CMatrix::identity(4).scale_real(&((1.0 - p) / 4.0));
        DensityMatrix::new(m).unwrap()
    }

    #[test]
    fn known_values() {
        let b = concurrence(&DensityMatrix::from_pure(&bell()).unwrap()).unwrap();
        assert!((b.concurrence - 1.0).abs() < 1e-10);
        assert_eq!(b.lambdas.len(), 4);
        assert_eq!(concurrence(&DensityMatrix::basis_state(4, 0)).unwrap().concurrence, 0.0);
        assert!((concurrence(&werner(0.8)).unwrap().concurrence - 0.7).abs() < 1e-9);
        assert_eq!(concurrence(&werner(0.2)).unwrap().concurrence, 0.0);
        assert!(matches!(concurrence(&DensityMatrix::basis_state(2, 0)), Err(Error::NotTwoQubit(2))));
    }

    #[test]
    fn spin_flip_of_basis_states() {
        let flipped = spin_flip_density(&DensityMatrix::<f64>::basis_state(4, 0));
        assert!(flipped.max_abs_diff(&DensityMatrix::basis_state(4, 3)) < 1e-15);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let singlet = DensityMatrix::from_pure(&[c(0.0), c(r), c(-r), c(0.0)]).unwrap();
        assert!(spin_flip_density(&singlet).max_abs_diff(&singlet) < 1e-15);
    }

    #[test]
    fn spin_flip_matches_explicit_sigma_y() {
        let y = CMatrix::<f64>::from_fn(2, |i, j| match (i, j) {
            (0, 1) => Complex::new(0.0, -1.0),
            (1, 0) => Complex::new(0.0, 1.0),
            _ => c(0.0),
        });
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=3 {
            let yn = (1..n).fold(y.clone(), |acc, _| acc.kron(&y));
            let rho = crate::sampling::random_density(n, &mut rng);
            let expected = rho.matrix().conj().conjugate_by(&yn);
            assert!(spin_flip_density(&rho).matrix().max_abs_diff(&expected) < 1e-14);
        }
    }

    #[test]
    fn pure_state_oracle_agrees() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let psi = random_pure(2, &mut rng);
            let direct = concurrence(&DensityMatrix::from_pure(&psi).unwrap()).unwrap().concurrence;
            assert!((direct - concurrence_pure_oracle(&psi).unwrap()).abs() < 1e-10);
        }
        assert!((concurrence_pure_oracle(&bell()).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(concurrence_pure_oracle(&[c(0.0), c(1.0), c(0.0), c(0.0)]).unwrap(), 0.0);
        assert!(concurrence_pure_oracle(&[c(1.0), c(1.0), c(0.0), c(0.0)]).is_err());
    }

    #[test]
    fn local_unitary_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..20 {
            let rho = crate::sampling::random_density(2, &mut rng);
            let u = random_local_unitary(2, &mut rng);
            let rotated = DensityMatrix::new_unchecked(rho.matrix().conjugate_by(&u));
            let a = concurrence(&rho).unwrap().concurrence;
            let b = concurrence(&rotated).unwrap().concurrence;
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn dwf_path_matches_density_path() {
        let space = PhaseSpace::with_default_poly(2).unwrap();
        let ops = phase_point_operators(&QuantumNet::zero(4), &build_mubs(&space).unwrap()).unwrap();
        let h = build_h(&build_sigma_y_t(&space), &build_s(&ops).unwrap()).unwrap();
        let w = dwf(&DensityMatrix::from_pure(&bell()).unwrap(), &ops).unwrap();
        assert!((concurrence_from_dwf(&w, &h, &ops).unwrap().concurrence - 1.0).abs() < 1e-10);
        let w = dwf(&DensityMatrix::maximally_mixed(4), &ops).unwrap();
        assert_eq!(concurrence_from_dwf(&w, &h, &ops).unwrap().concurrence, 0.0);
        let w = dwf(&werner(0.8), &ops).unwrap();
        assert!((concurrence_from_dwf(&w, &h, &ops).unwrap().concurrence - 0.7).abs() < 1e-9);
    }
}
