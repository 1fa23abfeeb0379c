//! Simulated tomography: sample every striation's projective measurement and
//! assemble the DWF from the observed line frequencies.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};

use crate::error::{Error, Result};
use crate::phase_space::LineId;
use crate::wigner::{dwf_from_probabilities, line_probabilities, DensityMatrix, DwfVector, PhasePointSet};

#[derive(Debug, Clone, PartialEq)]
pub struct TomographyEstimate {
    pub estimate: DwfVector<f64>,
    /// Outcome counts per line; each striation was measured `shots` times.
    pub counts: BTreeMap<LineId, u64>,
    pub shots: u64,
}

impl TomographyEstimate {
    pub fn max_error(&self, exact: &DwfVector<f64>) -> f64 {
        self.estimate.max_abs_diff(exact)
    }
}

/// Measures each of the N+1 bases `shots` times. Deterministic for a fixed `seed`.
pub fn simulate_tomography(
    rho: &DensityMatrix<f64>,
    ops: &PhasePointSet<f64>,
    shots: u64,
    seed: u64,
) -> Result<TomographyEstimate> {
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    let probs = line_probabilities(rho, ops)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = ops.dim();
    let mut counts = BTreeMap::new();
    let mut freqs = BTreeMap::new();
    for striation in 0..ops.space().num_striations() {
        let p: Vec<f64> = (0..dim).map(|i| probs[&LineId::new(striation, i)].clamp(0.0, 1.0)).collect();
        for (i, c) in multinomial(shots, &p, &mut rng).into_iter().enumerate() {
            let line = LineId::new(striation, i);
            counts.insert(line, c);
            freqs.insert(line, c as f64 / shots as f64);
        }
    }
    let estimate = dwf_from_probabilities(&freqs, ops.space())?;
    Ok(TomographyEstimate { estimate, counts, shots })
}

/// Multinomial draw by sequential conditional binomials.
fn multinomial(shots: u64, p: &[f64], rng: &mut ChaCha8Rng) -> Vec<u64> {
    let mut remaining = shots;
    let mut mass: f64 = p.iter().sum();
    let mut out = Vec::with_capacity(p.len());
    for (i, &pi) in p.iter().enumerate() {
        if i + 1 == p.len() {
            out.push(remaining);
            break;
        }
        let c = if remaining == 0 || mass <= 0.0 {
            0
        } else {
            let cond = (pi / mass).clamp(0.0, 1.0);
            Binomial::new(remaining, cond).expect("probability in [0,1]").sample(rng)
        };
        out.push(c);
        remaining -= c;
        mass -= pi;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mub::build_mubs;
    use crate::phase_space::{PhaseSpace, QuantumNet};
    use crate::wigner::{dwf, phase_point_operators};

    fn ops1() -> PhasePointSet<f64> {
        let space = PhaseSpace::with_default_poly(1).unwrap();
        phase_point_operators(&QuantumNet::zero(2), &build_mubs(&space).unwrap()).unwrap()
    }

    #[test]
    fn zero_shots_rejected() {
        let ops = ops1();
        let rho = DensityMatrix::basis_state(2, 0);
        assert!(matches!(simulate_tomography(&rho, &ops, 0, 1), Err(Error::ZeroShots)));
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let ops = ops1();
        let rho = DensityMatrix::basis_state(2, 0);
        let a = simulate_tomography(&rho, &ops, 1000, 42).unwrap();
        let b = simulate_tomography(&rho, &ops, 1000, 42).unwrap();
        assert_eq!(a, b);
        let c = simulate_tomography(&rho, &ops, 1000, 43).unwrap();
        assert_ne!(a.counts, c.counts);
    }

    #[test]
    fn counts_sum_to_shots_per_striation() {
        let ops = ops1();
        let est = simulate_tomography(&DensityMatrix::maximally_mixed(2), &ops, 12345, 9).unwrap();
        for k in 0..3 {
            assert_eq!(est.counts[&LineId::new(k, 0)] + est.counts[&LineId::new(k, 1)], 12345);
        }
        // |0><0| is deterministic in the computational basis
        let est = simulate_tomography(&DensityMatrix::basis_state(2, 0), &ops, 500, 9).unwrap();
        assert_eq!(est.counts[&LineId::new(0, 0)], 500);
    }

    #[test]
    fn converges_at_large_shot_counts() {
        let ops = ops1();
        let rho = DensityMatrix::basis_state(2, 0);
        let exact = dwf(&rho, &ops).unwrap();
        let est = simulate_tomography(&rho, &ops, 1_000_000, 7).unwrap();
        assert!(est.max_error(&exact) < 5e-3);
        let est = simulate_tomography(&rho, &ops, 10_000_000, 7).unwrap();
        assert!(est.max_error(&exact) < 2e-3);
    }
}
