//! Random states and unitaries for property checks and the verification suite.

use num_complex::Complex;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::CMatrix;
use crate::wigner::DensityMatrix;

fn gaussian(rng: &mut impl Rng) -> Complex<f64> {
    Complex::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-random unit vector of dimension `2^n`.
pub fn random_pure(n: u32, rng: &mut impl Rng) -> Vec<Complex<f64>> {
    let v: Vec<Complex<f64>> = (0..1usize << n).map(|_| gaussian(rng)).collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

/// Full-rank random state `G G^dagger / Tr(G G^dagger)` with Ginibre `G`.
pub fn random_density(n: u32, rng: &mut impl Rng) -> DensityMatrix<f64> {
    let dim = 1usize << n;
    let g = CMatrix::from_fn(dim, |_, _| gaussian(rng));
    let m = &g * &g.adjoint();
    let tr = m.trace().re;
    let m = m.scale_real(&(1.0 / tr));
    // symmetrize away rounding
    let m = (&m + &m.adjoint()).scale_real(&0.5);
    DensityMatrix::new(m).expect("Ginibre states are valid")
}

/// Haar-random unitary from Gram-Schmidt on a Ginibre matrix.
pub fn random_unitary(dim: usize, rng: &mut impl Rng) -> CMatrix<f64> {
    let mut cols: Vec<Vec<Complex<f64>>> = Vec::with_capacity(dim);
    for _ in 0..dim {
        let mut v: Vec<Complex<f64>> = (0..dim).map(|_| gaussian(rng)).collect();
        for c in &cols {
            let ip: Complex<f64> = c.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (vi, ci) in v.iter_mut().zip(c) {
                *vi -= ip * ci;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    CMatrix::from_fn(dim, |i, j| cols[j][i])
}

/// `U_1 ⊗ ... ⊗ U_n` with independent single-qubit Haar unitaries.
pub fn random_local_unitary(n: u32, rng: &mut impl Rng) -> CMatrix<f64> {
    (1..n).fold(random_unitary(2, rng), |acc, _| acc.kron(&random_unitary(2, rng)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_objects_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let rho = random_density(2, &mut rng);
        assert!(rho.min_eigenvalue() > -1e-12);
        let u = random_unitary(4, &mut rng);
        assert!((&u * &u.adjoint()).max_abs_diff(&CMatrix::identity(4)) < 1e-12);
        let psi = random_pure(3, &mut rng);
        assert!((psi.iter().map(|z| z.norm_sqr()).sum::<f64>() - 1.0).abs() < 1e-12);
        assert_eq!(random_local_unitary(3, &mut rng).dim(), 8);
    }
}
